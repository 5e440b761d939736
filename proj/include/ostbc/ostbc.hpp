#pragma once
// Convenience include for the whole toolkit.

#include "ostbc/code.hpp"
#include "ostbc/construct.hpp"
#include "ostbc/design.hpp"
#include "ostbc/equivalence.hpp"
#include "ostbc/errors.hpp"
#include "ostbc/exact.hpp"
#include "ostbc/io.hpp"
#include "ostbc/power.hpp"
#include "ostbc/rng.hpp"
#include "ostbc/simulate.hpp"

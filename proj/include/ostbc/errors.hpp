#pragma once

// Error categories the command line maps to distinct exit codes.

#include <stdexcept>
#include <string>

namespace ostbc {

/** Requested catalog name does not exist. */
struct UnknownNameError : std::runtime_error {
    explicit UnknownNameError(const std::string& what) : std::runtime_error(what) {}
};

/** File path missing or unreadable. */
struct BadPathError : std::runtime_error {
    explicit BadPathError(const std::string& what) : std::runtime_error(what) {}
};

/** File exists but does not parse as the expected format. */
struct MalformedFileError : std::runtime_error {
    explicit MalformedFileError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ostbc

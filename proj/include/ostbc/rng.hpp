#pragma once
// Deterministic pseudo-random streams with platform-independent output.
// <random>'s distributions are implementation-defined, which would break
// bit-identical reproduction of seeded runs across standard libraries, so
// the few draws needed here are hand-rolled on a fixed 64-bit mixer.

#include <cmath>
#include <cstdint>
#include <utility>

namespace ostbc {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // [0, 1) and (0, 1] on the 53-bit lattice doubles represent exactly.
    double unit_double() { return double(next() >> 11) * 0x1.0p-53; }
    double positive_unit_double() { return double((next() >> 11) + 1) * 0x1.0p-53; }

    // Uniform in [0, bound); the modulo bias of < bound/2^64 is irrelevant
    // for the shuffle-sized bounds used here.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

/// Stateless 64-bit scrambler (the SplitMix64 output stage). Used to derive
/// independent stream seeds from (base seed, index) pairs; plain arithmetic
/// offsets would alias into shifted copies of one SplitMix64 sequence.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// One standard-normal pair via Box-Muller; positive_unit_double keeps the
// log argument away from zero.
inline std::pair<double, double> gaussian_pair(SplitMix64& g) {
    const double u1 = g.positive_unit_double();
    const double u2 = g.unit_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 6.28318530717958647692529 * u2;
    return {r * std::cos(th), r * std::sin(th)};
}

} // namespace ostbc

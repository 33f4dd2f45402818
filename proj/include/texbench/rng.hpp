// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <cmath>
#include <cstdint>

namespace texbench {

/// SplitMix64. Used instead of <random> distributions, whose output is
/// implementation-defined, so seeds reproduce across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)); }

    /// Standard normal (Box-Muller, one value per call).
    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::uint64_t state_;
};

/// Stateless hash of a lattice point, for value noise.
inline std::uint64_t hash_coords(std::uint64_t seed, std::int64_t x, std::int64_t y) {
    Rng r(seed ^ (static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ull) ^
          (static_cast<std::uint64_t>(y) * 0xC2B2AE3D27D4EB4Full));
    return r.next();
}

inline double hash_unit(std::uint64_t seed, std::int64_t x, std::int64_t y) {
    return static_cast<double>(hash_coords(seed, x, y) >> 11) * 0x1.0p-53;
}

} // namespace texbench

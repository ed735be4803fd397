#pragma once

#include <cstdint>
#include <random>

namespace tvlab {

// All randomness flows through these helpers so results are bit-reproducible
// across platforms: mt19937_64 output is standard-specified, and the
// double conversions below avoid the implementation-defined std distributions.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent stream for item `index` under a master seed.
inline std::mt19937_64 stream_for(std::uint64_t master_seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(master_seed ^ splitmix64(index + 1)));
}

/// Uniform double in [0, 1).
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller (deterministic given the engine state).
inline double standard_normal(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    while (u1 == 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

} // namespace tvlab

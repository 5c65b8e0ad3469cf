#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

// Reproducible randomness. All stochastic code in the library draws from
// std::mt19937_64 (whose output sequence is fixed by the standard) through
// the helpers below, so identical seeds give bit-identical results on every
// platform. Gaussians use Box-Muller rather than std::normal_distribution,
// whose algorithm is implementation-defined.

namespace specres {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Derives an independent stream seed from a base seed and an index path,
// e.g. derive_seed(seed, {delta_index, m_index, trial_index}).
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = splitmix64(base);
    for (std::uint64_t p : path) {
        s = splitmix64(s ^ splitmix64(p + 0x632BE59BD9B4E019ULL));
    }
    return s;
}

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// uniform in [lo, hi)
inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// One Box-Muller pair of independent standard normals.
inline std::pair<double, double> gaussian_pair(std::mt19937_64& rng) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double radius = std::sqrt(-2.0 * std::log1p(-u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

// Circularly symmetric complex Gaussian: real and imaginary parts are
// independent N(0, sigma^2).
inline std::complex<double> complex_gaussian(std::mt19937_64& rng, double sigma) {
    auto [re, im] = gaussian_pair(rng);
    return {sigma * re, sigma * im};
}

}  // namespace specres

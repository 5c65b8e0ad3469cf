#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

// Point-source signals on the unit circle, the wrap-around metric, matching
// distance, and noisy Fourier measurement synthesis.

namespace specres {

struct Spike {
    Complex amplitude;
    double location = 0.0;  // frequency position in [0,1)
};

// Superposition of k >= 1 point sources with distinct locations. Locations
// are reduced to [0,1) by taking the fractional part at construction.
class Signal {
public:
    explicit Signal(std::vector<Spike> spikes);

    // Skips the distinct-locations check; used for estimator output, which
    // may legitimately contain collided locations.
    static Signal unchecked(std::vector<Spike> spikes);

    const std::vector<Spike>& spikes() const noexcept { return spikes_; }
    int size() const noexcept { return static_cast<int>(spikes_.size()); }

    std::vector<double> locations() const;
    std::vector<Complex> amplitudes() const;

private:
    Signal() = default;
    std::vector<Spike> spikes_;
};

// Fourier measurements v_ell for ell in {-half_width, ..., half_width}.
struct MeasurementSet {
    long half_width = 0;
    double noise_sigma = 0.0;
    std::optional<std::uint64_t> rng_seed;
    std::vector<Complex> values;  // ordered ell = -half_width ... half_width

    const Complex& at(long ell) const { return values[static_cast<std::size_t>(ell + half_width)]; }
};

// Reduces any real to [0,1).
double wrap_to_unit(double x);

// Wrap-around metric on the unit interval; inputs in [0,1).
double wrap_distance(double a, double b);

// Minimum pairwise wrap-around separation; 1/2 by convention for k = 1.
double min_separation(std::span<const double> locations);
double min_separation(const Signal& signal);

// v_ell = sum_j u_j e^{i 2 pi f_j ell} + eta_ell with eta_ell complex
// Gaussian of per-component standard deviation sigma. Deterministic for a
// fixed seed; sigma = 0 yields exact moments and consumes no randomness.
MeasurementSet measure(const Signal& signal, long half_width, double noise_sigma,
                       std::optional<std::uint64_t> seed);

// min over permutations pi of max_j max(|u_est_j - u_true_pi(j)|,
// d_w(f_est_j, f_true_pi(j))). Exact: brute force for k <= 8, bottleneck
// bipartite matching beyond.
double matching_distance(const Signal& est, const Signal& truth);

// Locations-only variant.
double location_matching_distance(std::span<const double> est, std::span<const double> truth);

// Rejection-samples k locations with min separation strictly above min_sep.
// Throws SeparationInfeasible when k * min_sep >= 1 or the trial cap is hit.
std::vector<double> sample_separated_locations(int k, double min_sep, std::mt19937_64& rng,
                                               long max_tries = 1000000);

// Random signal with separated locations. Magnitudes uniform in
// [amp_min, amp_max], phases uniform when random_phase is set, else 0.
Signal random_signal(int k, double min_sep, double amp_min, double amp_max, bool random_phase,
                     std::mt19937_64& rng);

namespace detail {
// Both are exact; exposed separately so tests can cross-check them.
double matching_bruteforce(const std::vector<std::vector<double>>& cost);
double matching_bottleneck(const std::vector<std::vector<double>>& cost);
}  // namespace detail

}  // namespace specres

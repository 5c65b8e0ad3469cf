#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "signal.hpp"
#include "vandermonde.hpp"

// Reproducible experiment sweeps with CSV output. Files start with '#'
// comment lines embedding the resolved configuration and seed; numeric
// columns use 17-significant-digit scientific notation so downstream
// plotting keeps the phase transition sharp. Identical seeds reproduce
// byte-identical files for any worker count.

namespace specres {

enum class RecoveryAlgo { Mpm, Refine };

struct NoiseSweepRow {
    double sigma = 0.0;
    long trial = 0;
    double matching_distance = 0.0;
};

// Monte Carlo over noise levels: measures `signal` at each sigma with a
// per-(sigma, trial) derived seed, recovers, and reports matching distance
// to the ground truth (locations only for the refine algorithm, which fixes
// amplitudes at one). refine_eps is ignored for the pencil algorithm.
std::vector<NoiseSweepRow> noise_sweep(const Signal& signal, long half_width,
                                       std::span<const double> sigmas, int trials,
                                       RecoveryAlgo algo, double refine_eps,
                                       std::uint64_t seed);

std::string phase_sweep_csv(std::span<const double> deltas, std::span<const long> row_counts,
                            int k, int trials, std::uint64_t seed);

std::string noise_sweep_csv(const Signal& signal, long half_width,
                            std::span<const double> sigmas, int trials, RecoveryAlgo algo,
                            double refine_eps, std::uint64_t seed);

// "%.16e" rendering used for all CSV numerics.
std::string format_sci(double value);

}  // namespace specres

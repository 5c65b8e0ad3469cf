#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "linalg.hpp"

// Vandermonde matrices with unimodular nodes alpha_j = e^{i 2 pi f_j},
// exact condition numbers, the extremal-function upper bound
// kappa^2 <= (m + 1/Delta - 1)/(m - 1/Delta - 1) for m > 1/Delta + 1, and
// the adversarial construction that is exponentially ill-conditioned below
// the separation threshold.

namespace specres {

enum class Indexing {
    FromZero,  // powers 0 ... rows-1
    Centered,  // powers -n ... n with rows = 2n+1 (rows must be odd)
};

struct VandermondeSpec {
    std::vector<double> locations;  // f_j in [0,1), distinct
    long rows = 1;
    Indexing indexing = Indexing::FromZero;
};

struct VandermondeReport {
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    double kappa = 0.0;          // +inf when rank deficient or rows < k
    double selberg_bound = 0.0;  // +inf when infeasible
    bool selberg_feasible = false;
    bool rank_deficient = false;
    double separation = 0.0;  // measured min wrap-around separation
    long rows = 0;
};

// Entry (l, j) = exp(i 2 pi f_j p_l) with p_l the l-th power per indexing.
ComplexMatrix build(const VandermondeSpec& spec);

VandermondeReport condition_number(const VandermondeSpec& spec);

// Adversarial instance witnessing the lower bound: k consecutive nodes at
// spacing 1/m (m = 2k) and a unit coefficient vector built from the
// sign-modulated Fejer power coefficients, measured over the centered index
// window of half width floor((1-epsilon) m / 2).
struct AdversarialInstance {
    VandermondeSpec spec;          // centered
    std::vector<Complex> witness;  // unit 2-norm
    int ell = 0;
    int r = 0;
    long grid_modulus = 0;  // node spacing 1/grid_modulus
    long half_width = 0;    // spec.rows = 2*half_width + 1
    double coeff_l1 = 0.0;  // l1 mass of the raw coefficients (1 by construction)
};

AdversarialInstance adversarial_instance(int k, double epsilon);

struct PhaseSweepRow {
    double delta = 0.0;
    long rows = 0;
    long trial = 0;
    double kappa = 0.0;
    double selberg_bound = 0.0;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
};

// For each (delta, rows) cell draws `trials` random delta-separated location
// sets and reports their conditioning. Per-trial RNG streams derive from
// (seed, delta index, rows index, trial index), so output is independent of
// execution order and worker count.
std::vector<PhaseSweepRow> phase_sweep(std::span<const double> deltas,
                                       std::span<const long> row_counts, int k, int trials,
                                       std::uint64_t seed);

}  // namespace specres

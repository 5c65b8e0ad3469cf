#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "signal.hpp"

// Modified matrix pencil method. From measurements v_ell the square Toeplitz
// pair A~(i,j) = v_{i-j}, B~(i,j) = v_{i-j+1} equals (V D_u V^H,
// V D_u D_alpha V^H) plus the noise, whose nonzero generalized eigenvalues
// are the nodes alpha_j = e^{i 2 pi f_j}. The method projects onto the top-k
// singular subspace of A~, solves the k x k projected eigenproblem, reads
// locations off the unit-circle projections of the eigenvalues, and recovers
// amplitudes by least squares over the full measurement window.

namespace specres {

struct PencilConfig {
    int k = 1;
    long pencil_order = 0;  // square Toeplitz size p; 0 selects p = half_width
};

struct RecoveryDiagnostics {
    // singular-value data of the Vandermonde matrix rebuilt at the estimates
    std::optional<double> sigma_min_est;
    std::optional<double> kappa_est;
    // analytic error bounds; filled by error_bounds in experiment mode
    std::optional<double> gamma_bound;
    std::optional<double> zeta_bound;
};

struct RecoveryResult {
    Signal spikes;
    RecoveryDiagnostics diagnostics;
    std::vector<std::string> warnings;
};

// Builds the Toeplitz pencil; requires half_width >= order.
std::pair<ComplexMatrix, ComplexMatrix> build_pencil(const MeasurementSet& meas, long order);

RecoveryResult recover(const MeasurementSet& meas, const PencilConfig& config);

struct GuaranteeBounds {
    double gamma = 0.0;  // location error bound: d_w(f_j, f_est) <= 2*gamma
    double zeta = 0.0;   // amplitude error bound, constant-1 instantiation of O(.)
};

// Diagnostic bounds computed from the ground truth: gamma from the pencil
// Vandermonde conditioning, zeta from the amplitude least-squares system.
// Throws RegimeViolation when the guarantee's preconditions fail
// (|E| + |F| < sigma_min^2 u_min, gamma < Delta/4, m > 1/(Delta-2gamma)+1).
GuaranteeBounds error_bounds(const MeasurementSet& meas, const PencilConfig& config,
                           const Signal& ground_truth, double noise_norm);

namespace detail {
// Generalized eigenvalues of the projected pencil, before unit-circle
// projection; exposed for the node-consistency tests.
std::vector<Complex> pencil_eigenvalues(const MeasurementSet& meas, const PencilConfig& config);
}  // namespace detail

}  // namespace specres

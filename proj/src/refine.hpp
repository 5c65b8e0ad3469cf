#pragma once

#include <functional>
#include <vector>

#include "fejer.hpp"
#include "signal.hpp"

// Fejer-preconditioned recovery of unit-amplitude spike locations.
//
// The preconditioned objective F(z) = sum_j c'_j |v_j - e^{i 2 pi j z}|^2
// (c'_j the Fejer power coefficients) equals T - 2 sum_j K_ell^r(z - f_j) on
// noiseless unit-amplitude signals, so its minimizers sit next to the true
// locations and the kernel's local quadratic bounds make the landscape
// approximately strongly convex there. IterativeRefinement exploits this: a
// coarse scan picks k well-separated minimizers, then per-spike windows
// shrink geometrically until the schedule guarantee gamma_j drops below the
// target accuracy.

namespace specres {

struct RefineConfig {
    int ell = 4;           // kernel order, >= 4
    int r = 1;             // kernel power, >= 1
    double epsilon = 1e-3; // target accuracy, in (0, 1/2)
    int k = 1;             // spike count
    double big_c = 12.0;   // quadratic upper constant C
    double small_c = 1.0 / 3.0;  // quadratic lower constant c
    double noise_bound = 0.0;    // caller-declared per-entry noise magnitude

    // ell = max(4, ceil(1/delta)); r chosen so the kernel tail
    // pi^2 / (4 ell^2 delta^2)^r sits below the epsilon^2 slack.
    static RefineConfig for_separation(int k, double delta, double epsilon);
};

struct SalemReport {
    double lhs = 0.0;     // sum_j c'_j |v_j|^2 on noiseless measurements
    double target = 0.0;  // sum_j |u_j|^2
    double bound = 0.0;   // admissible |lhs - target|
    bool ok = false;
};

// Preconditioning quality check: the coefficient-weighted measurement energy
// reproduces the amplitude energy up to pi^2/(24 ell^2 Delta^2) relatively
// for r = 1 and pi^2/(4 ell^2 Delta^2)^r for higher powers.
SalemReport salem_check(const Signal& signal, int ell, int r);

// F(z) as defined above; requires half_width >= r*ell.
double objective(const MeasurementSet& meas, const FejerCoefficients& coeffs, double z);

// Verifies the kernel-sum bracket at z: with gamma = d_w(z, {f_j}),
//   near (gamma < min(Delta/2, 1/ell)):
//     1 - 12 r ell^2 gamma^2 - tail <= G(z) <= 1 - ell^2 gamma^2 / 3 + tail
//   far (gamma >= 1/ell):  G(z) <= 1/4^r + tail
// where G(z) = sum_j K_ell^r(z - f_j). Gamma in the gap between the two
// regimes raises PreconditionViolation.
bool structure_check(const Signal& unit_signal, const RefineConfig& config, double z);

struct RefineOutcome {
    std::vector<double> locations;  // ascending
    long oracle_calls = 0;
    std::vector<double> gamma_trace;   // gamma_1 then one entry per round
    std::vector<double> initial_picks; // coarse-phase picks, in pick order
};

// Multigrid minimizer search against an oracle for F. Grid schedule:
// delta_j = (1/(4 ell)) (c/(C r))^j with guarantee
// gamma_j = sqrt(C r / c) delta_{j-1} + epsilon/2 (delta_1 for j = 1);
// rounds run while gamma_j exceeds epsilon.
RefineOutcome iterative_refinement(const std::function<double(double)>& oracle,
                                   const RefineConfig& config);

// Builds the measurement-backed oracle and runs the refinement. Requires
// half_width >= r*ell and noise_bound <= epsilon^2/(4k).
RefineOutcome recover_refine(const MeasurementSet& meas, const RefineConfig& config);

// Static ceiling on oracle calls implied by the schedule; the measured count
// must stay below it.
long oracle_call_ceiling(const RefineConfig& config);

}  // namespace specres

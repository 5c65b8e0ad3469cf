#pragma once

#include <vector>

#include "errors.hpp"

// Fejer kernel K_ell and its powers K_ell^r, normalized so K_ell(0) = 1 and
// periodic on [0,1):
//
//   K_ell(x) = (1/ell^2) (sin(ell pi x) / sin(pi x))^2
//            = (1/ell^2) sum_{j=-ell}^{ell} (ell - |j|) e^{i 2 pi j x}
//
// The Fourier coefficients of K_ell^r are nonnegative, symmetric, supported
// on {-r*ell, ..., r*ell}, and sum to one.

namespace specres {

struct FejerCoefficients {
    int ell = 1;
    int power = 1;
    std::vector<double> coeffs;  // index j + power*ell, j in [-power*ell, power*ell]

    int support() const noexcept { return power * ell; }
    double at(int j) const { return coeffs[static_cast<std::size_t>(j + support())]; }
};

// Closed-form evaluation; falls back to the finite Fourier sum near the
// removable singularities at integer x.
double fejer_eval(int ell, double x);

double fejer_power_eval(int ell, int r, double x);

// Triangular coefficients (ell - |j|)/ell^2.
FejerCoefficients fejer_coeffs(int ell);

// r-fold self-convolution of fejer_coeffs(ell), renormalized to sum one.
FejerCoefficients fejer_power_coeffs(int ell, int r);

// K_ell^r(x) <= 1/(4^r ell^{2r} x^{2r}); meaningful for 0 < |x| <= 1/2.
bool check_decay_bound(int ell, int r, double x);

// 1 - 12 r ell^2 x^2 <= K_ell^r(x) <= 1 - (1/3) ell^2 x^2 for ell >= 4 and
// |x| <= 1/ell. Throws PreconditionViolation outside that region.
bool check_local_bounds(int ell, int r, double x);

}  // namespace specres

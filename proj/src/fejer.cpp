#include "fejer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "signal.hpp"

namespace specres {

namespace {

void require_orders(int ell, int r) {
    if (ell < 1) {
        throw Error(ErrorCode::InvalidArgument, "ell must be positive");
    }
    if (r < 1) {
        throw Error(ErrorCode::InvalidArgument, "power must be positive");
    }
}

}  // namespace

double fejer_eval(int ell, double x) {
    require_orders(ell, 1);
    const double xf = wrap_to_unit(x);
    const double denom = std::sin(std::numbers::pi * xf);
    if (std::abs(denom) < 1e-9) {
        // 0/0 at integer x; the finite Fourier sum is exact and O(ell).
        double sum = 0.0;
        for (int j = 1; j <= ell - 1; ++j) {
            sum += 2.0 * (ell - j) * std::cos(2.0 * std::numbers::pi * j * xf);
        }
        sum += ell;
        return std::clamp(sum / (static_cast<double>(ell) * ell), 0.0, 1.0);
    }
    const double ratio = std::sin(static_cast<double>(ell) * std::numbers::pi * xf) / denom;
    const double value = ratio * ratio / (static_cast<double>(ell) * ell);
    return std::clamp(value, 0.0, 1.0);
}

double fejer_power_eval(int ell, int r, double x) {
    require_orders(ell, r);
    const double base = fejer_eval(ell, x);
    double out = 1.0;
    for (int i = 0; i < r; ++i) out *= base;
    return out;
}

FejerCoefficients fejer_coeffs(int ell) {
    require_orders(ell, 1);
    FejerCoefficients fc;
    fc.ell = ell;
    fc.power = 1;
    fc.coeffs.resize(static_cast<std::size_t>(2 * ell + 1));
    const double scale = 1.0 / (static_cast<double>(ell) * ell);
    for (int j = -ell; j <= ell; ++j) {
        fc.coeffs[static_cast<std::size_t>(j + ell)] = (ell - std::abs(j)) * scale;
    }
    return fc;
}

FejerCoefficients fejer_power_coeffs(int ell, int r) {
    require_orders(ell, r);
    const FejerCoefficients base = fejer_coeffs(ell);
    std::vector<double> acc = base.coeffs;
    for (int step = 1; step < r; ++step) {
        // direct convolution; desk-scale supports make O(r^2 ell^2) cheap
        std::vector<double> next(acc.size() + base.coeffs.size() - 1, 0.0);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            if (acc[i] == 0.0) continue;
            for (std::size_t j = 0; j < base.coeffs.size(); ++j) {
                next[i + j] += acc[i] * base.coeffs[j];
            }
        }
        acc = std::move(next);
    }
    double total = 0.0;
    for (double c : acc) total += c;
    for (double& c : acc) c /= total;  // downstream analysis relies on sum == 1

    FejerCoefficients fc;
    fc.ell = ell;
    fc.power = r;
    fc.coeffs = std::move(acc);
    return fc;
}

bool check_decay_bound(int ell, int r, double x) {
    require_orders(ell, r);
    const double bound_denom =
        std::pow(4.0 * static_cast<double>(ell) * ell * x * x, r);
    return fejer_power_eval(ell, r, x) <= 1.0 / bound_denom;
}

bool check_local_bounds(int ell, int r, double x) {
    require_orders(ell, r);
    if (ell < 4) {
        throw Error(ErrorCode::PreconditionViolation, "local bounds require ell >= 4");
    }
    if (std::abs(x) > 1.0 / static_cast<double>(ell)) {
        throw Error(ErrorCode::PreconditionViolation, "local bounds require |x| <= 1/ell");
    }
    const double value = fejer_power_eval(ell, r, x);
    const double lx2 = static_cast<double>(ell) * ell * x * x;
    const double lower = 1.0 - 12.0 * r * lx2;
    const double upper = 1.0 - lx2 / 3.0;
    return lower <= value && value <= upper;
}

}  // namespace specres

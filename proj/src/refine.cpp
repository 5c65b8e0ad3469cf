#include "refine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace specres {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const RefineConfig& config) {
    if (config.ell < 4) {
        throw Error(ErrorCode::InvalidArgument, "ell must be at least 4");
    }
    if (config.r < 1) {
        throw Error(ErrorCode::InvalidArgument, "r must be positive");
    }
    if (!(config.epsilon > 0.0 && config.epsilon < 0.5)) {
        throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1/2)");
    }
    if (config.k < 1) {
        throw Error(ErrorCode::InvalidArgument, "k must be positive");
    }
    if (!(config.big_c > 0.0) || !(config.small_c > 0.0) ||
        config.big_c * config.r <= config.small_c) {
        throw Error(ErrorCode::InvalidArgument, "need C r / c > 1");
    }
}

double kernel_tail(int ell, int r, double delta) {
    return kPi * kPi /
           std::pow(4.0 * static_cast<double>(ell) * ell * delta * delta, r);
}

struct Schedule {
    double ratio;   // C r / c
    double step1;   // delta_1
    double gamma1;

    double step(int j) const { return step1 * std::pow(ratio, -(j - 1)); }
    // guarantee after round j; round 1 is the coarse scan
    double gamma(int j) const {
        return j <= 1 ? gamma1 : std::sqrt(ratio) * step(j - 1) + eps / 2.0;
    }
    double eps;
};

Schedule make_schedule(const RefineConfig& config) {
    Schedule s;
    s.ratio = config.big_c * config.r / config.small_c;
    s.step1 = 1.0 / (4.0 * config.ell * s.ratio);
    s.eps = config.epsilon;
    s.gamma1 = std::sqrt(s.ratio) * s.step1 + config.epsilon / 2.0;
    return s;
}

}  // namespace

RefineConfig RefineConfig::for_separation(int k, double delta, double epsilon) {
    if (!(delta > 0.0 && delta <= 0.5)) {
        throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1/2]");
    }
    RefineConfig config;
    config.k = k;
    config.epsilon = epsilon;
    config.ell = std::max(4, static_cast<int>(std::ceil(1.0 / delta)));
    const double ld = config.ell * delta;
    const double raw = std::log(kPi * kPi / (epsilon * epsilon * ld * ld)) / std::log(4.0);
    config.r = std::max(1, static_cast<int>(std::ceil(raw)));
    return config;
}

SalemReport salem_check(const Signal& signal, int ell, int r) {
    const double delta = min_separation(signal);
    if (!(delta > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "signal separation must be positive");
    }
    const FejerCoefficients coeffs = fejer_power_coeffs(ell, r);
    const MeasurementSet meas = measure(signal, coeffs.support(), 0.0, std::nullopt);

    SalemReport report;
    for (int j = -coeffs.support(); j <= coeffs.support(); ++j) {
        report.lhs += coeffs.at(j) * std::norm(meas.at(j));
    }
    for (const Spike& s : signal.spikes()) {
        report.target += std::norm(s.amplitude);
    }
    const double relative =
        r == 1 ? kPi * kPi / (24.0 * static_cast<double>(ell) * ell * delta * delta)
               : kernel_tail(ell, r, delta);
    report.bound = report.target * relative;
    report.ok = std::abs(report.lhs - report.target) <= report.bound;
    return report;
}

double objective(const MeasurementSet& meas, const FejerCoefficients& coeffs, double z) {
    const int support = coeffs.support();
    if (meas.half_width < support) {
        throw Error(ErrorCode::InsufficientMeasurements,
                    "objective needs measurements up to r*ell");
    }
    double value = 0.0;
    for (int j = -support; j <= support; ++j) {
        const Complex probe = std::polar(1.0, 2.0 * kPi * j * z);
        value += coeffs.at(j) * std::norm(meas.at(j) - probe);
    }
    return value;
}

bool structure_check(const Signal& unit_signal, const RefineConfig& config, double z) {
    validate(config);
    for (const Spike& s : unit_signal.spikes()) {
        if (std::abs(s.amplitude - Complex{1.0, 0.0}) > 1e-12) {
            throw Error(ErrorCode::PreconditionViolation,
                        "structure_check expects unit amplitudes");
        }
    }
    const double delta = min_separation(unit_signal);
    const double zn = wrap_to_unit(z);

    double gamma = 0.5;
    double kernel_sum = 0.0;
    for (const Spike& s : unit_signal.spikes()) {
        gamma = std::min(gamma, wrap_distance(zn, s.location));
        kernel_sum += fejer_power_eval(config.ell, config.r, zn - s.location);
    }

    const double tail = kernel_tail(config.ell, config.r, delta);
    const double inv_ell = 1.0 / static_cast<double>(config.ell);
    if (gamma < std::min(delta / 2.0, inv_ell)) {
        const double lg2 = static_cast<double>(config.ell) * config.ell * gamma * gamma;
        const double lower = 1.0 - config.big_c * config.r * lg2 - tail;
        const double upper = 1.0 - config.small_c * lg2 + tail;
        return lower <= kernel_sum && kernel_sum <= upper;
    }
    if (gamma >= inv_ell) {
        return kernel_sum <= std::pow(0.25, config.r) + tail;
    }
    throw Error(ErrorCode::PreconditionViolation,
                "gamma falls between the near and far regimes of the kernel bounds");
}

RefineOutcome iterative_refinement(const std::function<double(double)>& oracle,
                                   const RefineConfig& config) {
    validate(config);
    const Schedule sched = make_schedule(config);

    RefineOutcome outcome;
    auto call = [&](double z) {
        ++outcome.oracle_calls;
        return oracle(z);
    };

    // Coarse phase: one oracle evaluation per grid point, then k rounds of
    // pick-the-minimizer and delete the surrounding 1/(2 ell) ball.
    const long grid_size = static_cast<long>(std::ceil(1.0 / sched.step1));
    std::vector<double> grid(static_cast<std::size_t>(grid_size));
    std::vector<double> values(static_cast<std::size_t>(grid_size));
    for (long i = 0; i < grid_size; ++i) {
        grid[static_cast<std::size_t>(i)] = static_cast<double>(i) * sched.step1;
        values[static_cast<std::size_t>(i)] = call(grid[static_cast<std::size_t>(i)]);
    }
    std::vector<char> alive(static_cast<std::size_t>(grid_size), 1);
    const double delete_radius = 1.0 / (2.0 * config.ell);

    std::vector<double> estimates;
    estimates.reserve(static_cast<std::size_t>(config.k));
    for (int pick = 0; pick < config.k; ++pick) {
        long best = -1;
        for (long i = 0; i < grid_size; ++i) {
            if (!alive[static_cast<std::size_t>(i)]) continue;
            if (best < 0 || values[static_cast<std::size_t>(i)] <
                                values[static_cast<std::size_t>(best)]) {
                best = i;  // scan order makes ties resolve to the smallest z
            }
        }
        if (best < 0) {
            throw Error(ErrorCode::OracleRegimeViolation,
                        "candidate grid exhausted before k picks");
        }
        const double z = grid[static_cast<std::size_t>(best)];
        estimates.push_back(z);
        for (long i = 0; i < grid_size; ++i) {
            if (alive[static_cast<std::size_t>(i)] &&
                wrap_distance(z, grid[static_cast<std::size_t>(i)]) <= delete_radius) {
                alive[static_cast<std::size_t>(i)] = 0;
            }
        }
    }
    outcome.initial_picks = estimates;
    outcome.gamma_trace.push_back(sched.gamma(1));

    // Refinement rounds: per-spike windows of radius gamma_{j-1} searched at
    // spacing delta_j, until the guarantee drops to epsilon.
    for (int j = 2;; ++j) {
        const double gamma_j = sched.gamma(j);
        if (gamma_j <= config.epsilon) break;
        outcome.gamma_trace.push_back(gamma_j);

        const double radius = sched.gamma(j - 1);
        const double step = sched.step(j);
        const long half_count = static_cast<long>(std::floor(radius / step));
        for (double& estimate : estimates) {
            double best_value = 0.0;
            double best_z = 0.0;
            bool first = true;
            for (long t = -half_count; t <= half_count; ++t) {
                const double z = wrap_to_unit(estimate + static_cast<double>(t) * step);
                const double value = call(z);
                if (first || value < best_value ||
                    (value == best_value && z < best_z)) {
                    best_value = value;
                    best_z = z;
                    first = false;
                }
            }
            estimate = best_z;
        }
    }

    std::sort(estimates.begin(), estimates.end());
    outcome.locations = std::move(estimates);
    return outcome;
}

RefineOutcome recover_refine(const MeasurementSet& meas, const RefineConfig& config) {
    validate(config);
    const FejerCoefficients coeffs = fejer_power_coeffs(config.ell, config.r);
    const int support = coeffs.support();
    if (meas.half_width < support) {
        throw Error(ErrorCode::InsufficientMeasurements,
                    "recover_refine needs measurements up to r*ell");
    }
    const double budget =
        config.epsilon * config.epsilon / (4.0 * static_cast<double>(config.k));
    if (config.noise_bound > budget) {
        throw Error(ErrorCode::NoiseBudgetExceeded,
                    "declared per-entry noise exceeds epsilon^2/(4k)");
    }

    // F(z) = S0 + 1 - 2 Re sum_j c'_j conj(v_j) e^{i 2 pi j z}; the rotor
    // recurrence spends one sincos per call instead of one per term.
    double s0 = 0.0;
    std::vector<Complex> weighted(static_cast<std::size_t>(2 * support + 1));
    for (int j = -support; j <= support; ++j) {
        s0 += coeffs.at(j) * std::norm(meas.at(j));
        weighted[static_cast<std::size_t>(j + support)] = coeffs.at(j) * std::conj(meas.at(j));
    }
    auto oracle = [&, s0](double z) {
        const Complex rotor = std::polar(1.0, 2.0 * kPi * z);
        Complex phase = std::polar(1.0, -2.0 * kPi * support * z);
        Complex sum{0.0, 0.0};
        for (const Complex& w : weighted) {
            sum += w * phase;
            phase *= rotor;
        }
        return s0 + 1.0 - 2.0 * sum.real();
    };
    return iterative_refinement(oracle, config);
}

long oracle_call_ceiling(const RefineConfig& config) {
    validate(config);
    const Schedule sched = make_schedule(config);
    const double initial = std::ceil(1.0 / sched.step1);
    double rounds = 0.0;
    double widest = 0.0;
    for (int j = 2;; ++j) {
        const double gamma_j = sched.gamma(j);
        if (gamma_j <= config.epsilon) break;
        rounds += 1.0;
        widest = std::max(widest,
                          2.0 * std::floor(sched.gamma(j - 1) / sched.step(j)) + 1.0);
    }
    return static_cast<long>(10.0 * (initial + config.k * rounds * widest));
}

}  // namespace specres

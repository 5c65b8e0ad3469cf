#include "vandermonde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fejer.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "signal.hpp"

namespace specres {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_shape(const VandermondeSpec& spec) {
    if (spec.rows < 1) {
        throw Error(ErrorCode::InvalidArgument, "rows must be positive");
    }
    if (spec.locations.empty()) {
        throw Error(ErrorCode::InvalidArgument, "need at least one node");
    }
    if (spec.indexing == Indexing::Centered && spec.rows % 2 == 0) {
        throw Error(ErrorCode::InvalidArgument, "centered indexing needs an odd row count");
    }
}

void validate(const VandermondeSpec& spec) {
    validate_shape(spec);
    std::vector<double> sorted(spec.locations);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorCode::InvalidArgument, "node locations must be distinct");
    }
}

}  // namespace

ComplexMatrix build(const VandermondeSpec& spec) {
    validate_shape(spec);
    const long k = static_cast<long>(spec.locations.size());
    const long offset = spec.indexing == Indexing::Centered ? (spec.rows - 1) / 2 : 0;
    ComplexMatrix m(spec.rows, k);
    const double two_pi = 2.0 * std::numbers::pi;
    for (long row = 0; row < spec.rows; ++row) {
        const double power = static_cast<double>(row - offset);
        for (long j = 0; j < k; ++j) {
            m(row, j) = std::polar(1.0, two_pi * spec.locations[static_cast<std::size_t>(j)] * power);
        }
    }
    return m;
}

VandermondeReport condition_number(const VandermondeSpec& spec) {
    validate(spec);
    const long k = static_cast<long>(spec.locations.size());

    VandermondeReport report;
    report.rows = spec.rows;
    report.separation = min_separation(spec.locations);

    const std::vector<double> sv = linalg::singular_values(build(spec));
    report.sigma_max = sv.front();
    if (spec.rows < k) {
        report.sigma_min = 0.0;
        report.kappa = kInf;
        report.rank_deficient = true;
    } else {
        report.sigma_min = sv.back();
        report.rank_deficient = report.sigma_min < 1e-14 * report.sigma_max;
        report.kappa = report.sigma_min > 0.0 ? report.sigma_max / report.sigma_min : kInf;
    }

    const double inv_delta = 1.0 / report.separation;
    if (static_cast<double>(spec.rows) > inv_delta + 1.0) {
        report.selberg_feasible = true;
        report.selberg_bound = std::sqrt((spec.rows + inv_delta - 1.0) / (spec.rows - inv_delta - 1.0));
    } else {
        report.selberg_feasible = false;
        report.selberg_bound = kInf;
    }
    return report;
}

AdversarialInstance adversarial_instance(int k, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0,1)");
    }
    if (k < 2) {
        throw Error(ErrorCode::InvalidArgument, "k must be at least 2");
    }
    const int ell = static_cast<int>(std::ceil(4.0 / epsilon));
    const int r = (k - 1) / (2 * ell);
    if (r < 1) {
        throw Error(ErrorCode::InfeasibleParameters,
                    "k is too small for this epsilon; need k >= 2*ceil(4/epsilon) + 1");
    }

    AdversarialInstance inst;
    inst.ell = ell;
    inst.r = r;
    inst.grid_modulus = 2L * k;
    inst.half_width = static_cast<long>(std::floor((1.0 - epsilon) * inst.grid_modulus / 2.0));

    // Coefficients of K_ell^r(x/m - 1/2): the half-period shift turns the
    // Fejer power coefficients c'_j into (-1)^j c'_j, which is what makes
    // every measured coordinate small. Padding nodes (needed when 2*r*ell+1
    // < k) carry zero coefficients and leave V u unchanged.
    const FejerCoefficients cp = fejer_power_coeffs(ell, r);
    const int support = cp.support();
    std::vector<double> raw(static_cast<std::size_t>(k), 0.0);
    std::vector<double> locations(static_cast<std::size_t>(k), 0.0);
    double l1 = 0.0;
    for (int idx = 0; idx < k; ++idx) {
        const int j = idx - support;  // consecutive grid indices; |j| > support is padding
        locations[static_cast<std::size_t>(idx)] =
            wrap_to_unit(static_cast<double>(j) / static_cast<double>(inst.grid_modulus));
        if (std::abs(j) <= support) {
            const double sign = std::abs(j) % 2 == 0 ? 1.0 : -1.0;
            raw[static_cast<std::size_t>(idx)] = sign * cp.at(j);
            l1 += std::abs(raw[static_cast<std::size_t>(idx)]);
        }
    }
    inst.coeff_l1 = l1;

    double norm = 0.0;
    for (double h : raw) norm += h * h;
    norm = std::sqrt(norm);
    inst.witness.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        inst.witness[i] = Complex{raw[i] / norm, 0.0};
    }

    inst.spec.locations = std::move(locations);
    inst.spec.rows = 2 * inst.half_width + 1;
    inst.spec.indexing = Indexing::Centered;
    return inst;
}

std::vector<PhaseSweepRow> phase_sweep(std::span<const double> deltas,
                                       std::span<const long> row_counts, int k, int trials,
                                       std::uint64_t seed) {
    if (deltas.empty() || row_counts.empty()) {
        throw Error(ErrorCode::InvalidArgument, "sweep grids must be nonempty");
    }
    if (k < 1 || trials < 1) {
        throw Error(ErrorCode::InvalidArgument, "k and trials must be positive");
    }
    for (double delta : deltas) {
        if (k > 1 && static_cast<double>(k) * delta >= 1.0) {
            throw Error(ErrorCode::SeparationInfeasible,
                        "cannot pack k points at this separation");
        }
    }

    const std::size_t cells = deltas.size() * row_counts.size() * static_cast<std::size_t>(trials);
    std::vector<PhaseSweepRow> rows(cells);
    parallel_for(cells, [&](std::size_t job) {
        const std::size_t trial = job % static_cast<std::size_t>(trials);
        const std::size_t mi = (job / static_cast<std::size_t>(trials)) % row_counts.size();
        const std::size_t di = job / (static_cast<std::size_t>(trials) * row_counts.size());

        std::mt19937_64 rng(derive_seed(seed, {di, mi, trial}));
        VandermondeSpec spec;
        spec.locations = sample_separated_locations(k, deltas[di], rng);
        spec.rows = row_counts[mi];
        spec.indexing = Indexing::FromZero;
        const VandermondeReport report = condition_number(spec);

        rows[job] = PhaseSweepRow{deltas[di],        row_counts[mi],   static_cast<long>(trial),
                                  report.kappa,      report.selberg_bound,
                                  report.sigma_min,  report.sigma_max};
    });
    return rows;
}

}  // namespace specres

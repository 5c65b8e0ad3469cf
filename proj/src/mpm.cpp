#include "mpm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vandermonde.hpp"

namespace specres {

namespace {

long resolve_order(const MeasurementSet& meas, const PencilConfig& config) {
    if (config.k < 1) {
        throw Error(ErrorCode::InvalidArgument, "k must be positive");
    }
    const long order = config.pencil_order > 0 ? config.pencil_order : meas.half_width;
    if (order < config.k) {
        throw Error(ErrorCode::InvalidArgument, "pencil_order must be at least k");
    }
    return order;
}

ComplexMatrix projected(const ComplexMatrix& basis, const ComplexMatrix& m) {
    return linalg::matmul(linalg::adjoint(basis), linalg::matmul(m, basis));
}

// Top-k left singular vectors of a~ and the projected k x k pair.
std::pair<ComplexMatrix, ComplexMatrix> project_pencil(const ComplexMatrix& a_tilde,
                                                       const ComplexMatrix& b_tilde, int k) {
    const linalg::SvdResult dec = linalg::svd(a_tilde);
    ComplexMatrix basis(a_tilde.rows(), k);
    for (long i = 0; i < a_tilde.rows(); ++i) {
        for (long j = 0; j < k; ++j) {
            basis(i, j) = dec.u(i, j);
        }
    }
    return {projected(basis, a_tilde), projected(basis, b_tilde)};
}

std::vector<Complex> projected_eigenvalues(const ComplexMatrix& a_hat,
                                           const ComplexMatrix& b_hat) {
    const std::vector<double> sv = linalg::singular_values(a_hat);
    if (sv.front() == 0.0 || sv.back() < 1e-13 * sv.front()) {
        throw Error(ErrorCode::PencilSingular,
                    "projected pencil matrix is numerically singular; "
                    "noise exceeds the recoverable regime");
    }
    try {
        return linalg::eig(linalg::solve(a_hat, b_hat));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Singular) {
            throw Error(ErrorCode::PencilSingular, "projected pencil matrix is singular");
        }
        throw;
    }
}

}  // namespace

std::pair<ComplexMatrix, ComplexMatrix> build_pencil(const MeasurementSet& meas, long order) {
    if (order < 1) {
        throw Error(ErrorCode::InvalidArgument, "pencil order must be positive");
    }
    // B~ needs v_{i-j+1} up to index `order`, so the measurement window must
    // reach half_width >= order.
    if (meas.half_width < order) {
        throw Error(ErrorCode::InsufficientMeasurements,
                    "pencil order exceeds the measurement half width");
    }
    ComplexMatrix a_tilde(order, order);
    ComplexMatrix b_tilde(order, order);
    for (long i = 0; i < order; ++i) {
        for (long j = 0; j < order; ++j) {
            a_tilde(i, j) = meas.at(i - j);
            b_tilde(i, j) = meas.at(i - j + 1);
        }
    }
    return {std::move(a_tilde), std::move(b_tilde)};
}

namespace detail {

std::vector<Complex> pencil_eigenvalues(const MeasurementSet& meas, const PencilConfig& config) {
    const long order = resolve_order(meas, config);
    const auto [a_tilde, b_tilde] = build_pencil(meas, order);
    const auto [a_hat, b_hat] = project_pencil(a_tilde, b_tilde, config.k);
    return projected_eigenvalues(a_hat, b_hat);
}

}  // namespace detail

RecoveryResult recover(const MeasurementSet& meas, const PencilConfig& config) {
    const std::vector<Complex> eigenvalues = detail::pencil_eigenvalues(meas, config);

    std::vector<std::string> warnings;
    std::vector<double> locations;
    locations.reserve(eigenvalues.size());
    for (const Complex& lambda : eigenvalues) {
        if (std::abs(lambda) == 0.0) {
            // arg() is undefined at zero; the radial projection has no target
            warnings.emplace_back("ZeroEigenvalue: eigenvalue at origin mapped to location 0");
            locations.push_back(0.0);
        } else {
            // eigenvalues approximate alpha_j = e^{i 2 pi f_j}; projecting
            // radially onto the unit circle keeps only the argument
            locations.push_back(wrap_to_unit(std::arg(lambda) / (2.0 * std::numbers::pi)));
        }
    }

    VandermondeSpec estimated;
    estimated.locations = locations;
    estimated.rows = 2 * meas.half_width + 1;
    estimated.indexing = Indexing::Centered;
    const ComplexMatrix v_hat = build(estimated);

    std::vector<Complex> amplitudes;
    try {
        amplitudes = linalg::lstsq(v_hat, meas.values);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::RankDeficient) throw;
        // collided location estimates; fall back to the minimum-norm solution
        warnings.emplace_back("RankDeficient: amplitudes solved via pseudoinverse");
        amplitudes = linalg::lstsq_svd(v_hat, meas.values);
    }

    std::vector<Spike> spikes(locations.size());
    for (std::size_t j = 0; j < locations.size(); ++j) {
        spikes[j] = {amplitudes[j], locations[j]};
    }

    RecoveryResult result{Signal::unchecked(std::move(spikes)), {}, std::move(warnings)};
    const std::vector<double> sv = linalg::singular_values(v_hat);
    result.diagnostics.sigma_min_est = sv.back();
    result.diagnostics.kappa_est =
        sv.back() > 0.0 ? sv.front() / sv.back() : std::numeric_limits<double>::infinity();
    return result;
}

GuaranteeBounds error_bounds(const MeasurementSet& meas, const PencilConfig& config,
                           const Signal& ground_truth, double noise_norm) {
    if (ground_truth.size() != config.k) {
        throw Error(ErrorCode::MismatchedCardinality, "ground truth size differs from config.k");
    }
    if (noise_norm < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "noise_norm must be nonnegative");
    }
    const long order = resolve_order(meas, config);
    const double k = static_cast<double>(config.k);

    double u_min = std::numeric_limits<double>::infinity();
    double u_max = 0.0;
    for (const Spike& s : ground_truth.spikes()) {
        u_min = std::min(u_min, std::abs(s.amplitude));
        u_max = std::max(u_max, std::abs(s.amplitude));
    }
    if (u_min == 0.0) {
        throw Error(ErrorCode::InvalidArgument, "ground truth has a zero amplitude");
    }

    // conditioning of the true pencil Vandermonde (order x k, powers 0..p-1)
    VandermondeSpec true_spec{ground_truth.locations(), order, Indexing::FromZero};
    const std::vector<double> sv = linalg::singular_values(build(true_spec));
    const double sigma_min = sv.back();
    const double kappa = sv.front() / sigma_min;

    const double gamma =
        k * noise_norm / (sigma_min * sigma_min * u_min) +
        4.0 * kappa * kappa *
            (k * noise_norm / u_min + std::pow(k, 1.5) * noise_norm * noise_norm / (u_min * u_min)) *
            (u_max / u_min);

    // guarantee preconditions, checked numerically against this realization
    const MeasurementSet exact = measure(ground_truth, meas.half_width, 0.0, std::nullopt);
    const auto [a_meas, b_meas] = build_pencil(meas, order);
    const auto [a_exact, b_exact] = build_pencil(exact, order);
    ComplexMatrix e_mat(order, order);
    ComplexMatrix f_mat(order, order);
    for (long i = 0; i < order; ++i) {
        for (long j = 0; j < order; ++j) {
            e_mat(i, j) = a_meas(i, j) - a_exact(i, j);
            f_mat(i, j) = b_meas(i, j) - b_exact(i, j);
        }
    }
    const double perturbation = linalg::two_norm(e_mat) + linalg::two_norm(f_mat);
    if (perturbation >= sigma_min * sigma_min * u_min) {
        throw Error(ErrorCode::RegimeViolation,
                    "pencil perturbation exceeds sigma_min^2 * u_min");
    }

    const double delta = min_separation(ground_truth);
    if (!(gamma < delta / 4.0)) {
        throw Error(ErrorCode::RegimeViolation, "gamma is not below Delta/4");
    }
    const double rows = static_cast<double>(2 * meas.half_width + 1);
    if (!(rows > 1.0 / (delta - 2.0 * gamma) + 1.0)) {
        throw Error(ErrorCode::RegimeViolation,
                    "measurement count is not above 1/(Delta - 2 gamma) + 1");
    }

    const double zeta = (gamma * std::pow(rows, 1.5) * k * u_max + noise_norm) /
                        (rows - 1.0 - 1.0 / (delta - 2.0 * gamma));
    return {gamma, zeta};
}

}  // namespace specres

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mpm.hpp"
#include "rng.hpp"
#include "signal.hpp"
#include "vandermonde.hpp"

using namespace specres;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Signal two_spikes(Complex u1, double f1, Complex u2, double f2) {
    return Signal({{u1, f1}, {u2, f2}});
}

double noise_norm_of(const MeasurementSet& meas, const Signal& truth) {
    const MeasurementSet exact = measure(truth, meas.half_width, 0.0, std::nullopt);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < meas.values.size(); ++i) {
        norm2 += std::norm(meas.values[i] - exact.values[i]);
    }
    return std::sqrt(norm2);
}

}  // namespace

TEST_CASE("build_pencil: constant and alternating measurements") {
    const Signal flat({{Complex{1, 0}, 0.0}});
    const auto [a_flat, b_flat] = build_pencil(measure(flat, 2, 0.0, std::nullopt), 2);
    for (long i = 0; i < 2; ++i) {
        for (long j = 0; j < 2; ++j) {
            CHECK(std::abs(a_flat(i, j) - Complex{1, 0}) < 1e-14);
            CHECK(std::abs(b_flat(i, j) - Complex{1, 0}) < 1e-14);
        }
    }

    const Signal alternating({{Complex{1, 0}, 0.5}});
    const auto [a_alt, b_alt] = build_pencil(measure(alternating, 2, 0.0, std::nullopt), 2);
    // v_ell = (-1)^ell
    CHECK(std::abs(a_alt(0, 0) - Complex{1, 0}) < 1e-14);
    CHECK(std::abs(a_alt(0, 1) - Complex{-1, 0}) < 1e-14);
    CHECK(std::abs(a_alt(1, 0) - Complex{-1, 0}) < 1e-14);
    CHECK(std::abs(a_alt(1, 1) - Complex{1, 0}) < 1e-14);
    CHECK(std::abs(b_alt(0, 0) - Complex{-1, 0}) < 1e-14);
    CHECK(std::abs(b_alt(0, 1) - Complex{1, 0}) < 1e-14);
    CHECK(std::abs(b_alt(1, 0) - Complex{1, 0}) < 1e-14);
    CHECK(std::abs(b_alt(1, 1) - Complex{-1, 0}) < 1e-14);
}

TEST_CASE("build_pencil equals V D_u V^H and V D_u D_alpha V^H") {
    const Signal s = two_spikes(Complex{1.5, 0.5}, 0.13, Complex{-0.7, 1.1}, 0.58);
    const long order = 5;
    const auto [a_tilde, b_tilde] = build_pencil(measure(s, order, 0.0, std::nullopt), order);

    const ComplexMatrix v = build({s.locations(), order, Indexing::FromZero});
    ComplexMatrix du(2, 2), dua(2, 2);
    for (int j = 0; j < 2; ++j) {
        const Complex alpha = std::polar(1.0, kTwoPi * s.spikes()[j].location);
        du(j, j) = s.spikes()[j].amplitude;
        dua(j, j) = s.spikes()[j].amplitude * alpha;
    }
    const ComplexMatrix a_expected = linalg::matmul(v, linalg::matmul(du, linalg::adjoint(v)));
    const ComplexMatrix b_expected = linalg::matmul(v, linalg::matmul(dua, linalg::adjoint(v)));
    for (long i = 0; i < order; ++i) {
        for (long j = 0; j < order; ++j) {
            CHECK(std::abs(a_tilde(i, j) - a_expected(i, j)) <= 1e-12);
            CHECK(std::abs(b_tilde(i, j) - b_expected(i, j)) <= 1e-12);
        }
    }
}

TEST_CASE("build_pencil requires enough measurements") {
    const Signal s({{Complex{1, 0}, 0.3}});
    const MeasurementSet meas = measure(s, 3, 0.0, std::nullopt);
    CHECK_THROWS_AS(build_pencil(meas, 4), Error);
    CHECK_NOTHROW(build_pencil(meas, 3));
}

TEST_CASE("pencil eigenvalues are the nodes e^{i 2 pi f_j}") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const Signal s = random_signal(3, 0.08, 0.5, 2.0, true, rng);
        const MeasurementSet meas = measure(s, 6, 0.0, std::nullopt);
        const std::vector<Complex> eigenvalues =
            detail::pencil_eigenvalues(meas, PencilConfig{3, 0});

        std::vector<Complex> nodes;
        for (const Spike& spike : s.spikes()) {
            nodes.push_back(std::polar(1.0, kTwoPi * spike.location));
        }
        std::vector<std::vector<double>> cost(3, std::vector<double>(3));
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    std::abs(eigenvalues[static_cast<std::size_t>(i)] -
                             nodes[static_cast<std::size_t>(j)]);
            }
        }
        CHECK(detail::matching_bruteforce(cost) <= 1e-8);
    }
}

TEST_CASE("eigenvalue-to-frequency decoding keeps the sign convention") {
    // a single spike at f = 0.3 must decode to 0.3 (an inverted convention
    // would return 0.7)
    const Signal s({{Complex{1, 0}, 0.3}});
    const RecoveryResult result = recover(measure(s, 4, 0.0, std::nullopt), PencilConfig{1, 0});
    CHECK(result.spikes.spikes()[0].location == doctest::Approx(0.3).epsilon(1e-9));

    // quarter-circle pair: eigenvalues +-i decode to 0.25 and 0.75
    const Signal quarters = two_spikes(Complex{1, 0}, 0.25, Complex{1, 0}, 0.75);
    const RecoveryResult pair = recover(measure(quarters, 6, 0.0, std::nullopt), PencilConfig{2, 0});
    std::vector<double> locations = pair.spikes.locations();
    std::sort(locations.begin(), locations.end());
    CHECK(locations[0] == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(locations[1] == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("noise-free recovery is exact") {
    const Signal single({{Complex{2, 0}, 0.3}});
    const RecoveryResult one = recover(measure(single, 4, 0.0, std::nullopt), PencilConfig{1, 0});
    CHECK(matching_distance(one.spikes, single) <= 1e-9);

    const Signal pair = two_spikes(Complex{1, 0}, 0.1, Complex{1, 0}, 0.6);
    const RecoveryResult two = recover(measure(pair, 8, 0.0, std::nullopt), PencilConfig{2, 0});
    CHECK(matching_distance(two.spikes, pair) <= 1e-8);
    CHECK(two.diagnostics.sigma_min_est.has_value());
    CHECK(two.diagnostics.kappa_est.has_value());
}

TEST_CASE("noise-free exactness at the minimal pencil p = k, n = k") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 6);
        const Signal s = random_signal(k, 0.05, 0.5, 2.0, true, rng);
        const MeasurementSet meas = measure(s, k, 0.0, std::nullopt);
        const RecoveryResult result = recover(meas, PencilConfig{k, k});
        CHECK(matching_distance(result.spikes, s) <= 1e-7);
    }
}

TEST_CASE("noisy recovery converges as sigma shrinks") {
    const Signal s = two_spikes(Complex{1, 0}, 0.1, Complex{1, 0}, 0.6);
    auto median_error = [&](double sigma) {
        std::vector<double> errors;
        for (int seed = 0; seed < 10; ++seed) {
            const MeasurementSet meas = measure(s, 32, sigma, derive_seed(900, {seed}));
            const RecoveryResult result = recover(meas, PencilConfig{2, 0});
            errors.push_back(matching_distance(result.spikes, s));
        }
        std::sort(errors.begin(), errors.end());
        return errors[errors.size() / 2];
    };
    const double coarse = median_error(1e-4);
    const double fine = median_error(1e-7);
    CHECK(median_error(1e-6) < 1e-3);
    CHECK(fine < coarse);
}

TEST_CASE("recovery is invariant under a global measurement phase") {
    std::mt19937_64 rng(47);
    const Signal s = random_signal(3, 0.1, 0.5, 2.0, true, rng);
    MeasurementSet meas = measure(s, 16, 1e-8, 1234);
    const RecoveryResult base = recover(meas, PencilConfig{3, 0});

    const Complex phase = std::polar(1.0, 0.7);
    for (Complex& v : meas.values) v *= phase;
    const RecoveryResult rotated = recover(meas, PencilConfig{3, 0});

    const std::vector<double> base_locs = base.spikes.locations();
    const std::vector<double> rot_locs = rotated.spikes.locations();
    CHECK(location_matching_distance(rot_locs, base_locs) <= 1e-9);

    // amplitudes pick up exactly the same phase; match spikes by location
    for (const Spike& rb : rotated.spikes.spikes()) {
        double best = 1.0;
        Complex matched{0, 0};
        for (const Spike& bb : base.spikes.spikes()) {
            const double d = wrap_distance(rb.location, bb.location);
            if (d < best) {
                best = d;
                matched = bb.amplitude;
            }
        }
        CHECK(std::abs(rb.amplitude - phase * matched) <= 1e-9);
    }
}

TEST_CASE("degenerate pencils are reported") {
    // all-zero measurements make the projected pencil singular
    MeasurementSet zeros;
    zeros.half_width = 4;
    zeros.values.assign(9, Complex{0, 0});
    CHECK_THROWS_AS(recover(zeros, PencilConfig{2, 0}), Error);

    // v = (0, 1, 0): the 1x1 pencil has eigenvalue exactly zero
    MeasurementSet impulse;
    impulse.half_width = 1;
    impulse.values = {Complex{0, 0}, Complex{1, 0}, Complex{0, 0}};
    const RecoveryResult result = recover(impulse, PencilConfig{1, 1});
    CHECK(result.spikes.spikes()[0].location == 0.0);
    REQUIRE(result.warnings.size() == 1);
    CHECK(result.warnings[0].find("ZeroEigenvalue") != std::string::npos);
}

TEST_CASE("error_bounds: zero noise collapses both bounds") {
    const Signal s = two_spikes(Complex{1, 0}, 0.1, Complex{1, 0}, 0.6);
    const MeasurementSet meas = measure(s, 11, 0.0, std::nullopt);
    const GuaranteeBounds bounds = error_bounds(meas, PencilConfig{2, 0}, s, 0.0);
    CHECK(bounds.gamma == 0.0);
    CHECK(bounds.zeta == 0.0);
}

TEST_CASE("error_bounds matches the closed formula") {
    const Signal s = two_spikes(Complex{1, 0}, 0.2, Complex{1, 0}, 0.7);
    const long n = 11;
    const MeasurementSet meas = measure(s, n, 0.0, std::nullopt);
    const double eta = 1e-8;
    const GuaranteeBounds bounds = error_bounds(meas, PencilConfig{2, 0}, s, eta);

    const auto sv = linalg::singular_values(build({s.locations(), n, Indexing::FromZero}));
    const double sigma_min = sv.back();
    const double kappa = sv.front() / sv.back();
    const double k = 2.0;
    const double expected_gamma =
        k * eta / (sigma_min * sigma_min) + 4.0 * kappa * kappa * (k * eta + std::pow(k, 1.5) * eta * eta);
    CHECK(bounds.gamma == doctest::Approx(expected_gamma).epsilon(1e-12));

    const double rows = 2.0 * n + 1.0;
    const double delta = 0.5;
    const double expected_zeta = (expected_gamma * std::pow(rows, 1.5) * k + eta) /
                                 (rows - 1.0 - 1.0 / (delta - 2.0 * expected_gamma));
    CHECK(bounds.zeta == doctest::Approx(expected_zeta).epsilon(1e-12));

    // doubling the noise strictly increases gamma
    const GuaranteeBounds doubled = error_bounds(meas, PencilConfig{2, 0}, s, 2.0 * eta);
    CHECK(doubled.gamma > bounds.gamma);
}

TEST_CASE("error_bounds guarantee holds on a small-noise instance") {
    const Signal s = two_spikes(Complex{1, 0}, 0.15, Complex{1, 0}, 0.65);
    for (int seed = 0; seed < 10; ++seed) {
        const MeasurementSet meas = measure(s, 32, 1e-6, derive_seed(321, {seed}));
        const double eta = noise_norm_of(meas, s);
        const GuaranteeBounds bounds = error_bounds(meas, PencilConfig{2, 0}, s, eta);
        const RecoveryResult result = recover(meas, PencilConfig{2, 0});
        const std::vector<double> est = result.spikes.locations();
        const std::vector<double> truth = s.locations();
        CHECK(location_matching_distance(est, truth) <= 2.0 * bounds.gamma);
    }
}

TEST_CASE("error_bounds rejects the out-of-regime case") {
    const Signal s = two_spikes(Complex{1, 0}, 0.15, Complex{1, 0}, 0.65);
    const MeasurementSet meas = measure(s, 8, 0.5, 99);
    const double eta = noise_norm_of(meas, s);
    CHECK_THROWS_AS(error_bounds(meas, PencilConfig{2, 0}, s, eta), Error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fejer.hpp"
#include "rng.hpp"

using namespace specres;

namespace {

// independent convolution oracle, no renormalization
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

}  // namespace

TEST_CASE("fejer_eval normalization and closed-form values") {
    for (int ell : {1, 2, 5, 17, 32}) {
        CHECK(fejer_eval(ell, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(fejer_eval(2, 0.25) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fejer_eval(2, 0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("fejer_eval periodicity and range") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const int ell = 1 + static_cast<int>(rng() % 32);
        const double x = uniform01(rng);
        const double v = fejer_eval(ell, x);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(std::abs(v - fejer_eval(ell, x + 1.0)) <= 1e-12);
    }
}

TEST_CASE("fejer_power_eval") {
    CHECK(fejer_power_eval(2, 3, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fejer_power_eval(2, 2, 0.25) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(check_decay_bound(4, 2, 0.4));
}

TEST_CASE("fejer_coeffs triangular values") {
    const FejerCoefficients two = fejer_coeffs(2);
    CHECK(two.support() == 2);
    CHECK(two.at(-2) == 0.0);
    CHECK(two.at(-1) == doctest::Approx(0.25));
    CHECK(two.at(0) == doctest::Approx(0.5));
    CHECK(two.at(1) == doctest::Approx(0.25));
    CHECK(two.at(2) == 0.0);

    const FejerCoefficients one = fejer_coeffs(1);
    CHECK(one.at(0) == doctest::Approx(1.0));

    for (int ell : {1, 2, 3, 7, 16, 33, 64}) {
        double sum = 0.0;
        for (double c : fejer_coeffs(ell).coeffs) sum += c;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("fejer_power_coeffs: base case and frozen r=2 convolution") {
    const FejerCoefficients base = fejer_coeffs(2);
    const FejerCoefficients same = fejer_power_coeffs(2, 1);
    REQUIRE(same.coeffs.size() == base.coeffs.size());
    for (std::size_t i = 0; i < base.coeffs.size(); ++i) {
        CHECK(same.coeffs[i] == doctest::Approx(base.coeffs[i]).epsilon(1e-15));
    }

    const FejerCoefficients squared = fejer_power_coeffs(2, 2);
    CHECK(squared.support() == 4);
    CHECK(squared.at(-2) == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(squared.at(-1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(squared.at(0) == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(squared.at(1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(squared.at(2) == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(squared.at(3) == 0.0);
    CHECK(squared.at(4) == 0.0);
}

TEST_CASE("fejer_power_coeffs matches the convolution oracle") {
    for (int ell : {2, 3, 5}) {
        for (int r : {2, 3, 4}) {
            std::vector<double> expected = fejer_coeffs(ell).coeffs;
            for (int step = 1; step < r; ++step) {
                expected = convolve(expected, fejer_coeffs(ell).coeffs);
            }
            const FejerCoefficients got = fejer_power_coeffs(ell, r);
            REQUIRE(got.coeffs.size() == expected.size());
            for (std::size_t i = 0; i < expected.size(); ++i) {
                CHECK(got.coeffs[i] == doctest::Approx(expected[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("fejer_power_coeffs invariants: nonnegative, sum one, symmetric, peak at zero") {
    long failures = 0;
    for (int ell = 1; ell <= 64; ++ell) {
        for (int r = 1; r <= 16; ++r) {
            const FejerCoefficients fc = fejer_power_coeffs(ell, r);
            double sum = 0.0;
            double peak = 0.0;
            for (double c : fc.coeffs) {
                if (c < 0.0) ++failures;
                sum += c;
                peak = std::max(peak, c);
            }
            if (std::abs(sum - 1.0) > 1e-12) ++failures;
            if (std::abs(fc.at(0) - peak) > 1e-12) ++failures;
            for (int j = 1; j <= fc.support(); ++j) {
                if (std::abs(fc.at(j) - fc.at(-j)) > 1e-12) ++failures;
            }
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("Fourier sum of coefficients reproduces the pointwise kernel power") {
    std::mt19937_64 rng(101);
    for (int ell : {2, 4, 8}) {
        for (int r : {1, 2, 3}) {
            const FejerCoefficients fc = fejer_power_coeffs(ell, r);
            for (int trial = 0; trial < 50; ++trial) {
                const double x = uniform01(rng);
                double sum = fc.at(0);
                for (int j = 1; j <= fc.support(); ++j) {
                    sum += 2.0 * fc.at(j) * std::cos(2.0 * std::numbers::pi * j * x);
                }
                CHECK(sum == doctest::Approx(fejer_power_eval(ell, r, x)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("decay bound spot checks") {
    CHECK(check_decay_bound(4, 1, 0.5));
    CHECK(check_decay_bound(8, 2, 0.3));
    // bound exceeds 1 here, kernel is still below it
    CHECK(check_decay_bound(4, 1, 0.01));
}

TEST_CASE("local bounds spot checks and preconditions") {
    CHECK(check_local_bounds(4, 1, 0.0));
    CHECK(check_local_bounds(8, 3, 0.05));
    CHECK(check_local_bounds(16, 1, 1.0 / 16.0));
    CHECK_THROWS_AS(check_local_bounds(3, 1, 0.1), Error);
    CHECK_THROWS_AS(check_local_bounds(8, 1, 0.2), Error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "linalg.hpp"
#include "rng.hpp"
#include "signal.hpp"

using namespace specres;
using namespace specres::linalg;

namespace {

ComplexMatrix random_matrix(long rows, long cols, std::mt19937_64& rng) {
    ComplexMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < cols; ++j) {
            m(i, j) = Complex{uniform01(rng) - 0.5, uniform01(rng) - 0.5};
        }
    }
    return m;
}

double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    REQUIRE(a.size() == b.size());
    std::vector<std::vector<double>> cost(a.size(), std::vector<double>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            cost[i][j] = std::abs(a[i] - b[j]);
        }
    }
    return specres::detail::matching_bruteforce(cost);
}

}  // namespace

TEST_CASE("svd of simple matrices") {
    ComplexMatrix identity(2, 2);
    identity(0, 0) = identity(1, 1) = Complex{1, 0};
    auto sv = singular_values(identity);
    CHECK(sv[0] == doctest::Approx(1.0));
    CHECK(sv[1] == doctest::Approx(1.0));

    ComplexMatrix diag(2, 2);
    diag(0, 0) = Complex{3, 0};
    diag(1, 1) = Complex{0, 4};
    sv = singular_values(diag);
    CHECK(sv[0] == doctest::Approx(4.0));
    CHECK(sv[1] == doctest::Approx(3.0));

    ComplexMatrix hadamard(2, 2);
    hadamard(0, 0) = hadamard(0, 1) = hadamard(1, 0) = Complex{1, 0};
    hadamard(1, 1) = Complex{-1, 0};
    sv = singular_values(hadamard);
    CHECK(sv[0] == doctest::Approx(std::sqrt(2.0)));
    CHECK(sv[1] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("svd reconstruction on random matrices") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const long rows = 2 + static_cast<long>(rng() % 8);
        const long cols = 2 + static_cast<long>(rng() % 8);
        const ComplexMatrix m = random_matrix(rows, cols, rng);
        const SvdResult dec = svd(m);

        REQUIRE(static_cast<long>(dec.singular_values.size()) == std::min(rows, cols));
        for (std::size_t i = 1; i < dec.singular_values.size(); ++i) {
            CHECK(dec.singular_values[i] <= dec.singular_values[i - 1]);
            CHECK(dec.singular_values[i] >= 0.0);
        }

        // M = U diag(s) V^H
        ComplexMatrix scaled = dec.u;
        for (long i = 0; i < scaled.rows(); ++i) {
            for (long j = 0; j < scaled.cols(); ++j) {
                scaled(i, j) *= dec.singular_values[static_cast<std::size_t>(j)];
            }
        }
        const ComplexMatrix rebuilt = matmul(scaled, adjoint(dec.v));
        double worst = 0.0;
        for (long i = 0; i < rows; ++i) {
            for (long j = 0; j < cols; ++j) {
                worst = std::max(worst, std::abs(rebuilt(i, j) - m(i, j)));
            }
        }
        CHECK(worst <= 1e-10 * dec.singular_values.front());
    }
}

TEST_CASE("svd of orthonormal columns gives unit singular values") {
    // columns of the scaled Fourier matrix are orthonormal
    const long n = 5;
    ComplexMatrix fourier(n, n);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
            fourier(i, j) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                                       2.0 * 3.14159265358979323846 * i * j / n);
        }
    }
    for (double s : singular_values(fourier)) {
        CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("eig basics") {
    ComplexMatrix diag(2, 2);
    diag(0, 0) = Complex{2, 0};
    diag(1, 1) = Complex{5, 0};
    CHECK(multiset_distance(eig(diag), {Complex{2, 0}, Complex{5, 0}}) <= 1e-12);

    ComplexMatrix rotation(2, 2);
    rotation(0, 1) = Complex{1, 0};
    rotation(1, 0) = Complex{-1, 0};
    CHECK(multiset_distance(eig(rotation), {Complex{0, 1}, Complex{0, -1}}) <= 1e-12);

    ComplexMatrix single(1, 1);
    single(0, 0) = Complex{0.3, -0.7};
    CHECK(multiset_distance(eig(single), {Complex{0.3, -0.7}}) <= 1e-15);

    CHECK_THROWS_AS(eig(ComplexMatrix(2, 3)), Error);
}

TEST_CASE("eig recovers the diagonal of V D V^-1") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const long n = 2 + static_cast<long>(rng() % 3);
        // diagonally dominant V keeps the similarity well conditioned
        ComplexMatrix v = random_matrix(n, n, rng);
        for (long i = 0; i < n; ++i) v(i, i) += Complex{3, 0};

        std::vector<Complex> expected(static_cast<std::size_t>(n));
        ComplexMatrix d(n, n);
        for (long i = 0; i < n; ++i) {
            expected[static_cast<std::size_t>(i)] =
                Complex{uniform01(rng) * 4 - 2, uniform01(rng) * 4 - 2};
            d(i, i) = expected[static_cast<std::size_t>(i)];
        }
        ComplexMatrix identity(n, n);
        for (long i = 0; i < n; ++i) identity(i, i) = Complex{1, 0};
        const ComplexMatrix v_inv = solve(v, identity);
        const ComplexMatrix m = matmul(matmul(v, d), v_inv);
        CHECK(multiset_distance(eig(m), expected) <= 1e-7);
    }
}

TEST_CASE("lstsq basics") {
    ComplexMatrix identity(3, 3);
    for (long i = 0; i < 3; ++i) identity(i, i) = Complex{1, 0};
    const std::vector<Complex> b{{1, 2}, {3, 4}, {5, 6}};
    const std::vector<Complex> x = lstsq(identity, b);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(std::abs(x[i] - b[i]) < 1e-14);

    ComplexMatrix ones(2, 1);
    ones(0, 0) = ones(1, 0) = Complex{1, 0};
    const std::vector<Complex> mean = lstsq(ones, std::vector<Complex>{{0, 0}, {2, 0}});
    CHECK(std::abs(mean[0] - Complex{1, 0}) < 1e-14);

    ComplexMatrix col(2, 1);
    col(0, 0) = Complex{1, 0};
    col(1, 0) = Complex{0, 1};
    const std::vector<Complex> unit = lstsq(col, std::vector<Complex>{{1, 0}, {0, 1}});
    CHECK(std::abs(unit[0] - Complex{1, 0}) < 1e-14);
}

TEST_CASE("lstsq residual is orthogonal to the column space") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const long rows = 6 + static_cast<long>(rng() % 5);
        const long cols = 2 + static_cast<long>(rng() % 3);
        const ComplexMatrix a = random_matrix(rows, cols, rng);
        std::vector<Complex> b(static_cast<std::size_t>(rows));
        for (Complex& v : b) v = Complex{uniform01(rng) - 0.5, uniform01(rng) - 0.5};

        const std::vector<Complex> x = lstsq(a, b);
        const std::vector<Complex> ax = mat_vec(a, x);
        std::vector<Complex> residual(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) residual[i] = b[i] - ax[i];
        const std::vector<Complex> gram = mat_vec(adjoint(a), residual);
        for (const Complex& g : gram) CHECK(std::abs(g) <= 1e-9);
    }
}

TEST_CASE("lstsq flags rank deficiency") {
    ComplexMatrix dup(3, 2);
    for (long i = 0; i < 3; ++i) {
        dup(i, 0) = Complex{1, 0};
        dup(i, 1) = Complex{1, 0};
    }
    const std::vector<Complex> b{{1, 0}, {1, 0}, {1, 0}};
    CHECK_THROWS_AS(lstsq(dup, b), Error);
    // the SVD fallback still produces a minimizer
    const std::vector<Complex> x = lstsq_svd(dup, b);
    const std::vector<Complex> ax = mat_vec(dup, x);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(std::abs(ax[i] - b[i]) < 1e-10);
}

TEST_CASE("solve basics and singularity") {
    ComplexMatrix diag(2, 2);
    diag(0, 0) = Complex{2, 0};
    diag(1, 1) = Complex{0, 1};
    const std::vector<Complex> x = solve(diag, std::vector<Complex>{{4, 0}, {0, 2}});
    CHECK(std::abs(x[0] - Complex{2, 0}) < 1e-14);
    CHECK(std::abs(x[1] - Complex{2, 0}) < 1e-14);

    CHECK_THROWS_AS(solve(ComplexMatrix(2, 2), std::vector<Complex>{{1, 0}, {1, 0}}), Error);
}

TEST_CASE("matmul, adjoint, two_norm") {
    ComplexMatrix a(2, 2);
    a(0, 0) = Complex{0, 1};
    a(1, 1) = Complex{2, 0};
    const ComplexMatrix aa = matmul(a, adjoint(a));
    CHECK(std::abs(aa(0, 0) - Complex{1, 0}) < 1e-14);
    CHECK(std::abs(aa(1, 1) - Complex{4, 0}) < 1e-14);

    CHECK(two_norm(std::vector<Complex>{{3, 0}, {0, 4}}) == doctest::Approx(5.0));
    CHECK(two_norm(a) == doctest::Approx(2.0));
    CHECK_THROWS_AS(matmul(a, ComplexMatrix(3, 2)), Error);
}

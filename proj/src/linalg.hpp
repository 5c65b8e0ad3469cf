#pragma once

#include <complex>
#include <span>
#include <vector>

#include "errors.hpp"

// Dense complex linear algebra required by the toolkit. The rest of the
// library depends only on this header; the backing implementation (Eigen)
// is confined to linalg.cpp.

namespace specres {

using Complex = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(long rows, long cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {
        if (rows < 0 || cols < 0) {
            throw Error(ErrorCode::InvalidArgument, "matrix dimensions must be nonnegative");
        }
    }

    long rows() const noexcept { return rows_; }
    long cols() const noexcept { return cols_; }

    // row-major layout
    Complex& operator()(long i, long j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    const Complex& operator()(long i, long j) const {
        return data_[static_cast<std::size_t>(i * cols_ + j)];
    }

    Complex* data() noexcept { return data_.data(); }
    const Complex* data() const noexcept { return data_.data(); }

private:
    long rows_ = 0;
    long cols_ = 0;
    std::vector<Complex> data_;
};

namespace linalg {

struct SvdResult {
    std::vector<double> singular_values;  // descending
    ComplexMatrix u;                      // left singular vectors, column i pairs with sigma_i
    ComplexMatrix v;                      // right singular vectors; M = U diag(sigma) V^H
};

// Full decomposition M = U diag(sigma) V^H. Throws ConvergenceFailure.
SvdResult svd(const ComplexMatrix& m);

// Singular values only (descending).
std::vector<double> singular_values(const ComplexMatrix& m);

// Eigenvalues of a square matrix, unordered. Throws ConvergenceFailure.
std::vector<Complex> eig(const ComplexMatrix& m);

// Least-squares minimizer of |Ax - b| via column-pivoted QR.
// Throws RankDeficient when A does not have full column rank.
std::vector<Complex> lstsq(const ComplexMatrix& a, std::span<const Complex> b);

// Minimum-norm least-squares solution via SVD; tolerates rank deficiency.
std::vector<Complex> lstsq_svd(const ComplexMatrix& a, std::span<const Complex> b);

// Solves M x = b for square M. Throws Singular.
std::vector<Complex> solve(const ComplexMatrix& m, std::span<const Complex> b);

// Solves M X = B column-wise for square M. Throws Singular.
ComplexMatrix solve(const ComplexMatrix& m, const ComplexMatrix& b);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& m);
std::vector<Complex> mat_vec(const ComplexMatrix& m, std::span<const Complex> x);

double two_norm(std::span<const Complex> v);
// Spectral norm (largest singular value).
double two_norm(const ComplexMatrix& m);

}  // namespace linalg
}  // namespace specres

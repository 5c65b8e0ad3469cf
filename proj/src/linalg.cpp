#include "linalg.hpp"

#include <Eigen/Dense>

namespace specres::linalg {

namespace {

using EigenRowMajor =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapConst = Eigen::Map<const EigenRowMajor>;

MapConst as_eigen(const ComplexMatrix& m) {
    return MapConst(m.data(), m.rows(), m.cols());
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
    ComplexMatrix out(e.rows(), e.cols());
    for (long i = 0; i < e.rows(); ++i) {
        for (long j = 0; j < e.cols(); ++j) {
            out(i, j) = e(i, j);
        }
    }
    return out;
}

Eigen::VectorXcd as_vector(std::span<const Complex> v) {
    return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<long>(v.size()));
}

std::vector<Complex> to_std(const Eigen::VectorXcd& v) {
    return std::vector<Complex>(v.data(), v.data() + v.size());
}

}  // namespace

SvdResult svd(const ComplexMatrix& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> dec(as_eigen(m),
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success) {
        throw Error(ErrorCode::ConvergenceFailure, "SVD did not converge");
    }
    SvdResult result;
    const auto& sv = dec.singularValues();
    result.singular_values.assign(sv.data(), sv.data() + sv.size());
    result.u = from_eigen(dec.matrixU());
    result.v = from_eigen(dec.matrixV());
    return result;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> dec(as_eigen(m));
    if (dec.info() != Eigen::Success) {
        throw Error(ErrorCode::ConvergenceFailure, "SVD did not converge");
    }
    const auto& sv = dec.singularValues();
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

std::vector<Complex> eig(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::InvalidArgument, "eig requires a square matrix");
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> dec(as_eigen(m), /*computeEigenvectors=*/false);
    if (dec.info() != Eigen::Success) {
        throw Error(ErrorCode::ConvergenceFailure, "eigenvalue iteration did not converge");
    }
    return to_std(dec.eigenvalues());
}

std::vector<Complex> lstsq(const ComplexMatrix& a, std::span<const Complex> b) {
    if (a.rows() < a.cols()) {
        throw Error(ErrorCode::InvalidArgument, "lstsq requires rows >= cols");
    }
    if (static_cast<long>(b.size()) != a.rows()) {
        throw Error(ErrorCode::InvalidArgument, "lstsq right-hand side has wrong length");
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(as_eigen(a));
    if (qr.rank() < a.cols()) {
        throw Error(ErrorCode::RankDeficient, "matrix does not have full column rank");
    }
    return to_std(qr.solve(as_vector(b)));
}

std::vector<Complex> lstsq_svd(const ComplexMatrix& a, std::span<const Complex> b) {
    if (static_cast<long>(b.size()) != a.rows()) {
        throw Error(ErrorCode::InvalidArgument, "lstsq right-hand side has wrong length");
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> dec(as_eigen(a),
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
    return to_std(dec.solve(as_vector(b)));
}

std::vector<Complex> solve(const ComplexMatrix& m, std::span<const Complex> b) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::InvalidArgument, "solve requires a square matrix");
    }
    if (static_cast<long>(b.size()) != m.rows()) {
        throw Error(ErrorCode::InvalidArgument, "solve right-hand side has wrong length");
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(as_eigen(m));
    if (!lu.isInvertible()) {
        throw Error(ErrorCode::Singular, "matrix is singular");
    }
    return to_std(lu.solve(as_vector(b)));
}

ComplexMatrix solve(const ComplexMatrix& m, const ComplexMatrix& b) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::InvalidArgument, "solve requires a square matrix");
    }
    if (b.rows() != m.rows()) {
        throw Error(ErrorCode::InvalidArgument, "solve right-hand side has wrong row count");
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(as_eigen(m));
    if (!lu.isInvertible()) {
        throw Error(ErrorCode::Singular, "matrix is singular");
    }
    return from_eigen(lu.solve(Eigen::MatrixXcd(as_eigen(b))));
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::InvalidArgument, "matmul dimension mismatch");
    }
    return from_eigen(as_eigen(a) * as_eigen(b));
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    return from_eigen(as_eigen(m).adjoint());
}

std::vector<Complex> mat_vec(const ComplexMatrix& m, std::span<const Complex> x) {
    if (static_cast<long>(x.size()) != m.cols()) {
        throw Error(ErrorCode::InvalidArgument, "mat_vec dimension mismatch");
    }
    return to_std(as_eigen(m) * as_vector(x));
}

double two_norm(std::span<const Complex> v) {
    return as_vector(v).norm();
}

double two_norm(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        return 0.0;
    }
    return singular_values(m).front();
}

}  // namespace specres::linalg

// linalg.cpp — Implementation of the dense complex linear algebra kernels

#include "redreg/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace redreg::linalg {

void require_square(const Matrix& X, const char* where)
{
    if (X.rows() == 0 || X.rows() != X.cols()) {
        throw std::invalid_argument(std::string(where) + ": matrix must be square and nonempty");
    }
}

void require_finite(const Matrix& X, const char* where)
{
    if (!X.allFinite()) {
        throw std::invalid_argument(std::string(where) + ": matrix has NaN/Inf entries");
    }
}

namespace {

Matrix symmetrized(const Matrix& H)
{
    return 0.5 * (H + H.adjoint());
}

// Rotate each eigenvector so its first component above threshold is
// real-positive. Keeps golden files stable across eigensolver versions.
void fix_phases(Matrix& vectors)
{
    for (Eigen::Index col = 0; col < vectors.cols(); ++col) {
        auto v = vectors.col(col);
        const double threshold = 1e-12 * v.cwiseAbs().maxCoeff();
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            const double mag = std::abs(v(k));
            if (mag > threshold) {
                v *= std::conj(v(k)) / mag;
                break;
            }
        }
    }
}

} // namespace

HermitianEig hermitian_eig(const Matrix& H)
{
    require_square(H, "hermitian_eig");
    require_finite(H, "hermitian_eig");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(H));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
    }

    HermitianEig result{solver.eigenvalues(), solver.eigenvectors()};
    fix_phases(result.eigenvectors);
    return result;
}

Matrix nearest_psd(const Matrix& X)
{
    require_square(X, "nearest_psd");
    require_finite(X, "nearest_psd");

    const HermitianEig eig = hermitian_eig(X);
    const Eigen::VectorXd clamped = eig.eigenvalues.cwiseMax(0.0);
    Matrix P = eig.eigenvectors * clamped.asDiagonal() * eig.eigenvectors.adjoint();
    return symmetrized(P);
}

Matrix psd_sqrt(const Matrix& P)
{
    require_square(P, "psd_sqrt");
    require_finite(P, "psd_sqrt");

    const HermitianEig eig = hermitian_eig(P);
    const double scale = frobenius_norm(P);
    if (eig.eigenvalues.minCoeff() < -1e-10 * scale) {
        throw std::invalid_argument("psd_sqrt: input is not positive semidefinite");
    }
    const Eigen::VectorXd roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    Matrix S = eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
    return symmetrized(S);
}

double frobenius_norm(const Matrix& X)
{
    require_finite(X, "frobenius_norm");
    return X.norm();
}

double trace_norm(const Matrix& X)
{
    require_square(X, "trace_norm");
    require_finite(X, "trace_norm");
    Eigen::JacobiSVD<Matrix> svd(X);
    return svd.singularValues().sum();
}

double min_eigenvalue(const Matrix& H)
{
    require_square(H, "min_eigenvalue");
    require_finite(H, "min_eigenvalue");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(H));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("min_eigenvalue: eigensolver failed to converge");
    }
    return solver.eigenvalues().minCoeff();
}

} // namespace redreg::linalg

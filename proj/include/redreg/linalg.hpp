// linalg.hpp — Dense complex linear algebra: Hermitian eigendecomposition,
// PSD projection/square root, and the matrix norms used across the library.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace redreg::linalg {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct HermitianEig {
    Eigen::VectorXd eigenvalues; // ascending
    Matrix eigenvectors;         // columns, unitary, deterministic phase
};

// Spectral decomposition of a Hermitian matrix. The input is symmetrized as
// (H + H†)/2 before solving; each eigenvector is rotated so its first
// component above 1e-12 * max|v_k| is real and positive.
HermitianEig hermitian_eig(const Matrix& H);

// Frobenius projection onto the PSD cone: (X + sqrt(X†X))/2, computed by
// zeroing the negative eigenvalues of the symmetrized input.
Matrix nearest_psd(const Matrix& X);

// Hermitian PSD square root. Eigenvalues below -1e-10 * ||P||_F are rejected;
// small negatives from roundoff are clamped to zero.
Matrix psd_sqrt(const Matrix& P);

double frobenius_norm(const Matrix& X);
double trace_norm(const Matrix& X); // sum of singular values
double min_eigenvalue(const Matrix& H);

// Validation helpers shared by the modules above.
void require_square(const Matrix& X, const char* where);
void require_finite(const Matrix& X, const char* where);

} // namespace redreg::linalg

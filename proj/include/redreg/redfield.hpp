// redfield.hpp — Time-dependent Kossakowski matrix and Lamb shift in the
// E_kq basis, plus the rank-two spectral analysis of a single noise channel.

#pragma once

#include <utility>

#include "redreg/model.hpp"

namespace redreg {

// chi and eta are indexed by collective indices i = (k, q), j = (n, m),
// lexicographically ordered: i = k * N + q. eta is the raw Lamb-shift
// coefficient matrix; H_LS = (1 / 2i) sum_ij eta_ij E_j^dag E_i. The 1/(2i)
// prefactor makes H_LS Hermitian and matches the d/h split used by the
// exactly solvable three-level case.
struct KossakowskiData {
    TimePoint t;
    Matrix chi;        // N^2 x N^2, Hermitian
    Matrix eta;        // N^2 x N^2, anti-Hermitian
    Matrix lamb_shift; // N x N, Hermitian
};

int collective_index(int k, int q, int dim);
std::pair<int, int> inverse_index(int flat, int dim);

// Bohr frequency of the collective index i = (k, q): omega_q - omega_k.
double bohr_frequency_of(const SystemModel& model, int flat);

// Assemble chi(t), eta(t) and H_LS(t) from the microscopic data.
KossakowskiData kossakowski(const SystemModel& model, const BathSpec& bath, TimePoint t);

// Rebuild H_LS from an eta matrix (used after entrywise filtering of eta).
Matrix lamb_shift_from_eta(const Matrix& eta, int dim);

struct WeightedMoments {
    double mean;
    double variance;
};

// Moments of x under the weights |A_i|^2 / sum |A_i|^2.
WeightedMoments weighted_moments(const Eigen::VectorXd& x, const Vector& A_vec);

struct SingleChannelSpectrum {
    double lambda_plus;
    double lambda_minus;
    Vector eigvec_plus;  // normalized; zero vector on the degenerate branch
    Vector eigvec_minus;
    double mean_J;
    double mean_S;
    double var_J;
    double var_S;
    double v_gamma; // sqrt(mean_J^2 + var_J + var_S)
};

// Nonzero spectrum of chi = |A><G| + |G><A| for arbitrary vectors.
// Returns (lambda_plus, lambda_minus, v_plus, v_minus).
struct DyadicSpectrum {
    double lambda_plus;
    double lambda_minus;
    Vector eigvec_plus;
    Vector eigvec_minus;
};
DyadicSpectrum dyadic_spectrum(const Vector& A_vec, const Vector& G_vec);

// Single-channel chi with G_i = Gamma_i A_i: eigenvalues from the inner-product
// form together with the |A_i|^2-weighted moments of J and S.
SingleChannelSpectrum single_channel_spectrum(const Vector& A_vec, const Vector& Gamma_vec);

// chi as a dense matrix for a single noise channel.
Matrix single_channel_chi(const Vector& A_vec, const Vector& Gamma_vec);

// Closed-form nearest-PSD projection of the single-channel chi (rank <= 1).
Matrix single_channel_regularized(const Vector& A_vec, const Vector& Gamma_vec);

} // namespace redreg

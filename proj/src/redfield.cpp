// redfield.cpp — Kossakowski/Lamb-shift assembly and single-channel analysis

#include "redreg/redfield.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "redreg/linalg.hpp"

namespace redreg {

int collective_index(int k, int q, int dim)
{
    if (k < 0 || q < 0 || k >= dim || q >= dim) {
        throw std::out_of_range("collective_index: basis index out of range");
    }
    return k * dim + q;
}

std::pair<int, int> inverse_index(int flat, int dim)
{
    if (flat < 0 || flat >= dim * dim) {
        throw std::out_of_range("inverse_index: flat index out of range");
    }
    return {flat / dim, flat % dim};
}

double bohr_frequency_of(const SystemModel& model, int flat)
{
    const auto [k, q] = inverse_index(flat, model.dimension());
    return model.bohr_frequency(k, q);
}

Matrix lamb_shift_from_eta(const Matrix& eta, int dim)
{
    // H_LS = (1 / 2i) sum_ij eta_ij E_j^dag E_i with i = (k, q), j = (n, m);
    // E_j^dag E_i = delta_nk |m><q|, so only j = (k, m) contributes.
    const Complex half_over_i(0.0, -0.5);
    Matrix H = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        for (int q = 0; q < dim; ++q) {
            const int i = k * dim + q;
            for (int m = 0; m < dim; ++m) {
                const int j = k * dim + m;
                H(m, q) += half_over_i * eta(i, j);
            }
        }
    }
    return 0.5 * (H + H.adjoint());
}

KossakowskiData kossakowski(const SystemModel& model, const BathSpec& bath, TimePoint t)
{
    const int channels = model.channel_count();
    if (channels != bath.channel_count()) {
        throw std::invalid_argument("kossakowski: model and bath channel counts differ");
    }
    const int dim = model.dimension();
    const int size = dim * dim;

    // Coupling amplitudes A_{beta,i} per flat index, and the Gamma matrix at
    // each Bohr frequency that actually carries coupling weight.
    std::vector<Vector> amplitudes(static_cast<std::size_t>(size));
    std::vector<bool> active(static_cast<std::size_t>(size), false);
    std::vector<Matrix> gamma_at(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
        const auto [k, q] = inverse_index(i, dim);
        Vector a(channels);
        for (int beta = 0; beta < channels; ++beta) {
            a(beta) = model.coupling(beta)(k, q);
        }
        active[static_cast<std::size_t>(i)] = a.squaredNorm() > 0.0;
        amplitudes[static_cast<std::size_t>(i)] = std::move(a);
        if (active[static_cast<std::size_t>(i)]) {
            gamma_at[static_cast<std::size_t>(i)] = bath.gamma_matrix(model.bohr_frequency(k, q), t);
        }
    }

    KossakowskiData data{t, Matrix::Zero(size, size), Matrix::Zero(size, size), Matrix()};

    // Fill the upper triangle and mirror, so Hermiticity holds by construction.
    for (int i = 0; i < size; ++i) {
        if (!active[static_cast<std::size_t>(i)]) continue;
        const Vector& ai = amplitudes[static_cast<std::size_t>(i)];
        const Matrix& Gi = gamma_at[static_cast<std::size_t>(i)];
        for (int j = i; j < size; ++j) {
            if (!active[static_cast<std::size_t>(j)]) continue;
            const Vector& aj = amplitudes[static_cast<std::size_t>(j)];
            const Matrix& Gj = gamma_at[static_cast<std::size_t>(j)];

            Complex chi_sum(0.0, 0.0);
            Complex eta_sum(0.0, 0.0);
            for (int beta = 0; beta < channels; ++beta) {
                if (ai(beta) == Complex(0.0, 0.0)) continue;
                for (int alpha = 0; alpha < channels; ++alpha) {
                    if (aj(alpha) == Complex(0.0, 0.0)) continue;
                    const Complex weight = ai(beta) * std::conj(aj(alpha));
                    const Complex row_term = Gi(alpha, beta);
                    const Complex col_term = std::conj(Gj(beta, alpha));
                    chi_sum += (row_term + col_term) * weight;
                    eta_sum += (row_term - col_term) * weight;
                }
            }

            if (i == j) {
                data.chi(i, i) = chi_sum.real();                 // Hermitian diagonal
                data.eta(i, i) = Complex(0.0, eta_sum.imag());   // anti-Hermitian diagonal
            } else {
                data.chi(i, j) = chi_sum;
                data.chi(j, i) = std::conj(chi_sum);
                data.eta(i, j) = eta_sum;
                data.eta(j, i) = -std::conj(eta_sum);
            }
        }
    }

    data.lamb_shift = lamb_shift_from_eta(data.eta, dim);
    return data;
}

WeightedMoments weighted_moments(const Eigen::VectorXd& x, const Vector& A_vec)
{
    if (x.size() != A_vec.size()) {
        throw std::invalid_argument("weighted_moments: size mismatch");
    }
    const Eigen::VectorXd weights = A_vec.cwiseAbs2();
    const double total = weights.sum();
    if (total <= 0.0) {
        throw std::invalid_argument("weighted_moments: A_vec must not be identically zero");
    }
    const double mean = weights.dot(x) / total;
    const double mean_sq = weights.dot(x.cwiseProduct(x)) / total;
    return {mean, std::max(0.0, mean_sq - mean * mean)};
}

DyadicSpectrum dyadic_spectrum(const Vector& A_vec, const Vector& G_vec)
{
    if (A_vec.size() != G_vec.size()) {
        throw std::invalid_argument("dyadic_spectrum: size mismatch");
    }
    const double norm_a2 = A_vec.squaredNorm();
    if (norm_a2 <= 0.0) {
        throw std::invalid_argument("dyadic_spectrum: A_vec must not be identically zero");
    }

    const Vector zero = Vector::Zero(A_vec.size());
    const double norm_g2 = G_vec.squaredNorm();
    if (norm_g2 == 0.0) {
        return {0.0, 0.0, zero, zero};
    }

    const Complex overlap = G_vec.dot(A_vec); // <G|A>
    const double scale = norm_g2 * norm_a2;
    const double cs_gap = scale - std::norm(overlap); // Cauchy-Schwarz slack

    if (cs_gap <= 1e-24 * scale) {
        // |G> = c |A>: rank-one chi with eigenvalue 2 Re(c) ||A||^2.
        Eigen::Index pivot = 0;
        A_vec.cwiseAbs().maxCoeff(&pivot);
        const Complex c = G_vec(pivot) / A_vec(pivot);
        const double lambda = 2.0 * c.real() * norm_a2;
        const Vector unit_a = A_vec.normalized();
        if (lambda >= 0.0) {
            return {lambda, 0.0, unit_a, zero};
        }
        return {0.0, lambda, zero, unit_a};
    }

    const double disc = std::max(0.0, scale - overlap.imag() * overlap.imag());
    const double root = std::sqrt(disc);
    const double lambda_plus = overlap.real() + root;
    const double lambda_minus = overlap.real() - root;

    const auto eigvec = [&](double lambda) {
        Vector v = (Complex(lambda, 0.0) - overlap) * G_vec + Complex(norm_g2, 0.0) * A_vec;
        const double n = v.norm();
        if (n == 0.0) {
            return zero;
        }
        return Vector(v / n);
    };

    return {lambda_plus, lambda_minus, eigvec(lambda_plus), eigvec(lambda_minus)};
}

SingleChannelSpectrum single_channel_spectrum(const Vector& A_vec, const Vector& Gamma_vec)
{
    if (A_vec.size() != Gamma_vec.size()) {
        throw std::invalid_argument("single_channel_spectrum: size mismatch");
    }
    const Vector G_vec = Gamma_vec.cwiseProduct(A_vec);
    const DyadicSpectrum dyadic = dyadic_spectrum(A_vec, G_vec);

    const Eigen::VectorXd J = Gamma_vec.real();
    const Eigen::VectorXd S = Gamma_vec.imag();
    const WeightedMoments mj = weighted_moments(J, A_vec);
    const WeightedMoments ms = weighted_moments(S, A_vec);
    const double v_gamma = std::sqrt(mj.mean * mj.mean + mj.variance + ms.variance);

    return {dyadic.lambda_plus, dyadic.lambda_minus,
            dyadic.eigvec_plus, dyadic.eigvec_minus,
            mj.mean, ms.mean, mj.variance, ms.variance, v_gamma};
}

Matrix single_channel_chi(const Vector& A_vec, const Vector& Gamma_vec)
{
    if (A_vec.size() != Gamma_vec.size()) {
        throw std::invalid_argument("single_channel_chi: size mismatch");
    }
    const Vector G_vec = Gamma_vec.cwiseProduct(A_vec);
    return A_vec * G_vec.adjoint() + G_vec * A_vec.adjoint();
}

Matrix single_channel_regularized(const Vector& A_vec, const Vector& Gamma_vec)
{
    const SingleChannelSpectrum spectrum = single_channel_spectrum(A_vec, Gamma_vec);
    const double mean_sq_J = spectrum.var_J + spectrum.mean_J * spectrum.mean_J;
    const double mean_sq_S = spectrum.var_S + spectrum.mean_S * spectrum.mean_S;
    const double gamma_rms = std::sqrt(mean_sq_J + mean_sq_S);

    const auto size = A_vec.size();
    if (gamma_rms == 0.0) {
        return Matrix::Zero(size, size); // Gamma vanishes on the support of A
    }
    if (spectrum.v_gamma <= 1e-12 * gamma_rms) {
        // Degenerate V(Gamma) = 0: chi itself is zero, nothing to keep.
        const double lambda = 2.0 * spectrum.mean_J * A_vec.squaredNorm();
        if (lambda <= 0.0) {
            return Matrix::Zero(size, size);
        }
        const Vector unit_a = A_vec.normalized();
        return lambda * unit_a * unit_a.adjoint();
    }

    const Vector G_vec = Gamma_vec.cwiseProduct(A_vec);
    const Complex shift_plus(spectrum.v_gamma, spectrum.mean_S);
    const Complex shift_minus(spectrum.v_gamma, -spectrum.mean_S);

    Matrix result = G_vec * G_vec.adjoint()
                  + (mean_sq_J + mean_sq_S) * A_vec * A_vec.adjoint()
                  + shift_plus * G_vec * A_vec.adjoint()
                  + shift_minus * A_vec * G_vec.adjoint();
    result /= 2.0 * spectrum.v_gamma;
    return 0.5 * (result + result.adjoint());
}

} // namespace redreg

// reference.cpp — Exact V-system solution and closed-form Kossakowski oracles

#include "redreg/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "redreg/linalg.hpp"

namespace redreg {

namespace {

void validate(const VSystemParams& params)
{
    if (params.gamma1 < 0.0 || params.gamma2 < 0.0) {
        throw std::invalid_argument("VSystemParams: rates must be >= 0");
    }
    if (!(params.mu > 0.0)) {
        throw std::invalid_argument("VSystemParams: mu must be > 0");
    }
}

struct CubicSetup {
    Complex M;       // mu + i omega0
    double G11, G22, G12; // gamma_ab mu / 2 (G21 = G12)
    std::array<Complex, 3> h;
};

CubicSetup setup(const VSystemParams& params)
{
    validate(params);
    CubicSetup s;
    s.M = Complex(params.mu, params.omega0);
    s.G11 = 0.5 * params.gamma1 * params.mu;
    s.G22 = 0.5 * params.gamma2 * params.mu;
    s.G12 = 0.5 * std::sqrt(params.gamma1 * params.gamma2) * params.mu;

    const double w1 = params.omega1, w2 = params.omega2;
    const Complex i(0.0, 1.0);
    s.h[0] = s.M + i * (w1 + w2);
    s.h[1] = s.G11 + s.G22 - w1 * w2 + i * s.M * (w1 + w2);
    s.h[2] = -s.M * w1 * w2 + i * (w1 * s.G22 + w2 * s.G11);
    return s;
}

Complex q_of(const std::array<Complex, 3>& h, Complex s)
{
    return ((s + h[0]) * s + h[1]) * s + h[2];
}

Complex q_prime(const std::array<Complex, 3>& h, Complex s)
{
    return (3.0 * s + 2.0 * h[0]) * s + h[1];
}

} // namespace

std::array<Complex, 3> cubic_coefficients(const VSystemParams& params)
{
    return setup(params).h;
}

std::array<Complex, 3> cubic_roots(const VSystemParams& params)
{
    const auto h = cubic_coefficients(params);

    Eigen::Matrix3cd companion = Eigen::Matrix3cd::Zero();
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;
    companion(0, 2) = -h[2];
    companion(1, 2) = -h[1];
    companion(2, 2) = -h[0];
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("cubic_roots: companion eigensolver failed");
    }

    std::array<Complex, 3> roots;
    for (int j = 0; j < 3; ++j) {
        Complex r = solver.eigenvalues()(j);
        for (int it = 0; it < 2; ++it) { // Newton polish
            const Complex dq = q_prime(h, r);
            if (std::abs(dq) == 0.0) break;
            r -= q_of(h, r) / dq;
        }
        roots[static_cast<std::size_t>(j)] = r;
    }
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    double max_abs = 0.0;
    for (const Complex& r : roots) {
        max_abs = std::max(max_abs, std::abs(r));
    }
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            if (std::abs(roots[a] - roots[b]) <= 1e-8 * max_abs) {
                throw DegenerateRootsError(
                    "cubic_roots: nearly degenerate roots; use the ODE-embedding oracle instead");
            }
        }
    }
    return roots;
}

Eigen::Matrix2cd ExactAmplitudeSolution::transfer(double t) const
{
    Eigen::Matrix2cd W = Eigen::Matrix2cd::Zero();
    for (int j = 0; j < 3; ++j) {
        W += residues[static_cast<std::size_t>(j)] * std::exp(roots[static_cast<std::size_t>(j)] * t);
    }
    return W;
}

ExactAmplitudeSolution solve_exact(const VSystemParams& params)
{
    const CubicSetup s = setup(params);
    const auto roots = cubic_roots(params);
    const Complex i(0.0, 1.0);

    ExactAmplitudeSolution solution;
    solution.roots = roots;
    for (int j = 0; j < 3; ++j) {
        const Complex r = roots[static_cast<std::size_t>(j)];
        const Complex denom = q_prime(s.h, r);
        Eigen::Matrix2cd W;
        W(0, 0) = (r + i * params.omega2) * (r + s.M) + s.G22;
        W(0, 1) = -s.G12;
        W(1, 0) = -s.G12;
        W(1, 1) = (r + i * params.omega1) * (r + s.M) + s.G11;
        solution.residues[static_cast<std::size_t>(j)] = W / denom;
    }
    return solution;
}

Eigen::Vector2cd exact_amplitudes(const VSystemParams& params, const Eigen::Vector2cd& a0,
                                  double t)
{
    if (t < 0.0 || !std::isfinite(t)) {
        throw std::invalid_argument("exact_amplitudes: t must be finite and >= 0");
    }
    return solve_exact(params).transfer(t) * a0;
}

Matrix exact_density(const VSystemParams& params, const Eigen::Vector3cd& psi0, double t)
{
    if (std::abs(psi0.squaredNorm() - 1.0) > 1e-10) {
        throw std::invalid_argument("exact_density: initial amplitudes must be normalized");
    }
    const Complex a0 = psi0(0);
    const Eigen::Vector2cd a = exact_amplitudes(params, psi0.tail<2>(), t);

    Matrix rho(3, 3);
    rho(0, 0) = 1.0 - std::norm(a(0)) - std::norm(a(1));
    rho(0, 1) = a0 * std::conj(a(0));
    rho(0, 2) = a0 * std::conj(a(1));
    rho(1, 1) = std::norm(a(0));
    rho(1, 2) = a(0) * std::conj(a(1));
    rho(2, 2) = std::norm(a(1));
    rho(1, 0) = std::conj(rho(0, 1));
    rho(2, 0) = std::conj(rho(0, 2));
    rho(2, 1) = std::conj(rho(1, 2));
    return rho;
}

PropagatorMatrix exact_channel(const VSystemParams& params, double t)
{
    const Eigen::Matrix2cd W = solve_exact(params).transfer(t);

    Matrix V = Matrix::Zero(3, 3);
    V(0, 0) = 1.0;
    V.block<2, 2>(1, 1) = W;
    const Eigen::Matrix2cd absorbed = Eigen::Matrix2cd::Identity() - W.adjoint() * W;
    Matrix K = Matrix::Zero(3, 3);
    K.block<2, 2>(1, 1) = absorbed;

    // Phi(E_bd) = (V e_b)(V e_d)^dag + K_db |0><0|, laid out with the shared
    // vectorization map Phi[(a,c),(b,d)].
    const int dim = 3;
    Matrix phi(dim * dim, dim * dim);
    for (int b = 0; b < dim; ++b) {
        for (int d = 0; d < dim; ++d) {
            Matrix image = V.col(b) * V.col(d).adjoint();
            image(0, 0) += K(d, b);
            for (int a = 0; a < dim; ++a) {
                for (int c = 0; c < dim; ++c) {
                    phi(a * dim + c, b * dim + d) = image(a, c);
                }
            }
        }
    }
    return PropagatorMatrix{t, std::move(phi)};
}

KossakowskiData qubit_kossakowski(double omega1, const BathSpec& bath, TimePoint t)
{
    if (bath.channel_count() != 1) {
        throw std::invalid_argument("qubit_kossakowski: expected a single-channel bath");
    }
    const Complex gamma = bath.gamma_half_fourier(0, 0, omega1, t).value;

    KossakowskiData data{t, Matrix::Zero(4, 4), Matrix::Zero(4, 4), Matrix()};
    const int idx = collective_index(0, 1, 2);
    data.chi(idx, idx) = 2.0 * gamma.real();
    data.eta(idx, idx) = Complex(0.0, 2.0 * gamma.imag());
    data.lamb_shift = lamb_shift_from_eta(data.eta, 2);
    return data;
}

KossakowskiData oscillator_kossakowski(double omega_s, const BathSpec& bath, TimePoint t,
                                       int fock_levels)
{
    if (bath.channel_count() != 1) {
        throw std::invalid_argument("oscillator_kossakowski: expected a single-channel bath");
    }
    if (fock_levels < 2) {
        throw std::invalid_argument("oscillator_kossakowski: need at least 2 Fock levels");
    }
    const Complex gamma = bath.gamma_half_fourier(0, 0, omega_s, t).value;
    const int dim = fock_levels + 1;
    const int size = dim * dim;

    KossakowskiData data{t, Matrix::Zero(size, size), Matrix::Zero(size, size), Matrix()};
    for (int k = 0; k < fock_levels; ++k) {
        const int i = collective_index(k, k + 1, dim);
        const double ak = std::sqrt(static_cast<double>(k + 1));
        for (int m = 0; m < fock_levels; ++m) {
            const int j = collective_index(m, m + 1, dim);
            const double am = std::sqrt(static_cast<double>(m + 1));
            data.chi(i, j) = 2.0 * gamma.real() * ak * am;
            data.eta(i, j) = Complex(0.0, 2.0 * gamma.imag() * ak * am);
        }
    }
    data.lamb_shift = lamb_shift_from_eta(data.eta, dim);
    return data;
}

} // namespace redreg

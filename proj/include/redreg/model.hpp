// model.hpp — Microscopic problem data: system Hamiltonian spectrum, coupling
// operators, and bath correlation functions with their half-Fourier transforms.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace redreg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// A point on the time axis that may be the second-Markov limit t -> inf.
// Kept as a distinct state rather than a large float so exp(-mu*t) handling
// never overflows.
class TimePoint {
public:
    static TimePoint at(double t);
    static TimePoint infinity();

    bool is_infinite() const { return infinite_; }
    double value() const; // throws for the infinite point

private:
    TimePoint(double t, bool infinite) : value_(t), infinite_(infinite) {}
    double value_{0.0};
    bool infinite_{false};
};

// Half-Fourier transform value Gamma(omega, t) = J + i S.
struct GammaValue {
    Complex value;
    double J() const { return value.real(); }
    double S() const { return value.imag(); }
};

// Finite-dimensional system in its energy eigenbasis: H_S = diag(energies),
// plus one coupling operator per noise channel.
class SystemModel {
public:
    SystemModel(Eigen::VectorXd energies, std::vector<Matrix> couplings);

    int dimension() const { return static_cast<int>(energies_.size()); }
    int channel_count() const { return static_cast<int>(couplings_.size()); }

    const Eigen::VectorXd& energies() const { return energies_; }
    const std::vector<Matrix>& couplings() const { return couplings_; }
    const Matrix& coupling(int channel) const;

    // omega_kq = omega_q - omega_k
    double bohr_frequency(int k, int q) const;
    Matrix hamiltonian() const;

private:
    Eigen::VectorXd energies_;
    std::vector<Matrix> couplings_;
};

// Bath correlation data. Either the Lorentzian closed form
// c_ab(tau) = (gamma_ab mu / 2) exp(-mu |tau|) exp(-i omega0 tau)
// or tabulated samples of c_ab(tau) on a tau grid starting at zero.
class BathSpec {
public:
    static BathSpec lorentzian(Eigen::MatrixXd gamma, double mu, double omega0);
    // Two-channel gamma with the rank-one off-diagonal sqrt(gamma1*gamma2).
    static BathSpec lorentzian_rank_one(double gamma1, double gamma2, double mu, double omega0);
    static BathSpec tabulated(std::vector<double> tau_grid, std::vector<Matrix> samples);

    enum class Kind { LorentzianVacuum, Tabulated };

    Kind kind() const { return kind_; }
    int channel_count() const { return channels_; }

    // Lorentzian parameter access (throws for tabulated baths).
    const Eigen::MatrixXd& gamma() const;
    double mu() const;
    double omega0() const;

    Complex correlation(int alpha, int beta, double tau) const;
    GammaValue gamma_half_fourier(int alpha, int beta, double omega, TimePoint t) const;
    // All channels at once: Gamma(omega, t) as an M x M matrix.
    Matrix gamma_matrix(double omega, TimePoint t) const;
    // J(omega) = Re Gamma(omega, inf), real symmetric PSD.
    Eigen::MatrixXd spectral_density(double omega) const;

private:
    BathSpec() = default;

    Complex lorentzian_gamma(int alpha, int beta, double omega, TimePoint t) const;
    Complex tabulated_gamma(int alpha, int beta, double omega, TimePoint t) const;
    Complex tabulated_correlation(int alpha, int beta, double tau) const;

    Kind kind_{Kind::LorentzianVacuum};
    int channels_{0};

    Eigen::MatrixXd gamma_;
    double mu_{0.0};
    double omega0_{0.0};

    std::vector<double> tau_grid_;
    std::vector<Matrix> samples_;
};

// Ready-made models used throughout the examples and the reference solutions.
SystemModel vsystem_model(double omega1, double omega2);
SystemModel qubit_model(double omega1);
SystemModel truncated_oscillator_model(double omega_s, int fock_levels);

} // namespace redreg

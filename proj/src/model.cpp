// model.cpp — System/bath data and the Gamma(omega, t) evaluations

#include "redreg/model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "redreg/linalg.hpp"

namespace redreg {

TimePoint TimePoint::at(double t)
{
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("TimePoint::at: time must be finite and >= 0");
    }
    return TimePoint(t, false);
}

TimePoint TimePoint::infinity()
{
    return TimePoint(0.0, true);
}

double TimePoint::value() const
{
    if (infinite_) {
        throw std::logic_error("TimePoint::value: point is the t -> inf limit");
    }
    return value_;
}

SystemModel::SystemModel(Eigen::VectorXd energies, std::vector<Matrix> couplings)
    : energies_(std::move(energies)), couplings_(std::move(couplings))
{
    const auto n = energies_.size();
    if (n < 2) {
        throw std::invalid_argument("SystemModel: dimension must be >= 2");
    }
    if (!energies_.allFinite()) {
        throw std::invalid_argument("SystemModel: energies must be finite");
    }
    if (couplings_.empty()) {
        throw std::invalid_argument("SystemModel: at least one coupling operator required");
    }
    for (const auto& A : couplings_) {
        if (A.rows() != n || A.cols() != n) {
            throw std::invalid_argument("SystemModel: coupling operator dimension mismatch");
        }
        linalg::require_finite(A, "SystemModel");
    }
}

const Matrix& SystemModel::coupling(int channel) const
{
    if (channel < 0 || channel >= channel_count()) {
        throw std::out_of_range("SystemModel::coupling: channel index out of range");
    }
    return couplings_[static_cast<std::size_t>(channel)];
}

double SystemModel::bohr_frequency(int k, int q) const
{
    if (k < 0 || q < 0 || k >= dimension() || q >= dimension()) {
        throw std::out_of_range("SystemModel::bohr_frequency: index out of range");
    }
    return energies_(q) - energies_(k);
}

Matrix SystemModel::hamiltonian() const
{
    return energies_.cast<Complex>().asDiagonal();
}

BathSpec BathSpec::lorentzian(Eigen::MatrixXd gamma, double mu, double omega0)
{
    if (gamma.rows() == 0 || gamma.rows() != gamma.cols()) {
        throw std::invalid_argument("BathSpec::lorentzian: gamma must be square and nonempty");
    }
    if (!gamma.allFinite()) {
        throw std::invalid_argument("BathSpec::lorentzian: gamma has NaN/Inf entries");
    }
    const double scale = gamma.norm();
    if ((gamma - gamma.transpose()).norm() > 1e-12 * std::max(scale, 1.0)) {
        throw std::invalid_argument("BathSpec::lorentzian: gamma must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gamma);
    if (solver.eigenvalues().minCoeff() < -1e-12 * std::max(scale, 1.0)) {
        throw std::invalid_argument("BathSpec::lorentzian: gamma must be positive semidefinite");
    }
    if (!(mu > 0.0) || !std::isfinite(mu) || !std::isfinite(omega0)) {
        throw std::invalid_argument("BathSpec::lorentzian: mu must be > 0 and parameters finite");
    }

    BathSpec bath;
    bath.kind_ = Kind::LorentzianVacuum;
    bath.channels_ = static_cast<int>(gamma.rows());
    bath.gamma_ = std::move(gamma);
    bath.mu_ = mu;
    bath.omega0_ = omega0;
    return bath;
}

BathSpec BathSpec::lorentzian_rank_one(double gamma1, double gamma2, double mu, double omega0)
{
    if (gamma1 < 0.0 || gamma2 < 0.0) {
        throw std::invalid_argument("BathSpec::lorentzian_rank_one: rates must be >= 0");
    }
    Eigen::MatrixXd gamma(2, 2);
    const double cross = std::sqrt(gamma1 * gamma2);
    gamma << gamma1, cross, cross, gamma2;
    return lorentzian(std::move(gamma), mu, omega0);
}

BathSpec BathSpec::tabulated(std::vector<double> tau_grid, std::vector<Matrix> samples)
{
    if (tau_grid.size() < 2 || tau_grid.size() != samples.size()) {
        throw std::invalid_argument("BathSpec::tabulated: need >= 2 samples matching the tau grid");
    }
    if (tau_grid.front() != 0.0) {
        throw std::invalid_argument("BathSpec::tabulated: tau grid must start at zero");
    }
    for (std::size_t i = 1; i < tau_grid.size(); ++i) {
        if (!(tau_grid[i] > tau_grid[i - 1])) {
            throw std::invalid_argument("BathSpec::tabulated: tau grid must be strictly increasing");
        }
    }
    const auto channels = samples.front().rows();
    if (channels == 0) {
        throw std::invalid_argument("BathSpec::tabulated: samples must be nonempty matrices");
    }
    for (const auto& c : samples) {
        if (c.rows() != channels || c.cols() != channels) {
            throw std::invalid_argument("BathSpec::tabulated: sample dimension mismatch");
        }
        linalg::require_finite(c, "BathSpec::tabulated");
    }

    BathSpec bath;
    bath.kind_ = Kind::Tabulated;
    bath.channels_ = static_cast<int>(channels);
    bath.tau_grid_ = std::move(tau_grid);
    bath.samples_ = std::move(samples);
    return bath;
}

const Eigen::MatrixXd& BathSpec::gamma() const
{
    if (kind_ != Kind::LorentzianVacuum) {
        throw std::logic_error("BathSpec::gamma: not a Lorentzian bath");
    }
    return gamma_;
}

double BathSpec::mu() const
{
    if (kind_ != Kind::LorentzianVacuum) {
        throw std::logic_error("BathSpec::mu: not a Lorentzian bath");
    }
    return mu_;
}

double BathSpec::omega0() const
{
    if (kind_ != Kind::LorentzianVacuum) {
        throw std::logic_error("BathSpec::omega0: not a Lorentzian bath");
    }
    return omega0_;
}

namespace {

void require_channel(int index, int channels, const char* where)
{
    if (index < 0 || index >= channels) {
        throw std::out_of_range(std::string(where) + ": channel index out of range");
    }
}

constexpr double kTabulatedDecayTol = 1e-8;
constexpr double kQuadratureRelTol = 1e-9;
constexpr int kQuadratureMaxDepth = 32;

// Adaptive Simpson on a complex integrand with absolute tolerance budget.
template <typename F>
Complex adaptive_simpson(const F& f, double a, double b, Complex fa, Complex fm, Complex fb,
                         Complex whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const Complex flm = f(lm);
    const Complex frm = f(rm);
    const Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const Complex delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth >= kQuadratureMaxDepth) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
         + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

template <typename F>
Complex integrate_cell(const F& f, double a, double b, double tol)
{
    const Complex fa = f(a);
    const Complex fm = f(0.5 * (a + b));
    const Complex fb = f(b);
    const Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 0);
}

} // namespace

Complex BathSpec::tabulated_correlation(int alpha, int beta, double tau) const
{
    if (tau > tau_grid_.back()) {
        throw std::invalid_argument("BathSpec::correlation: tau beyond tabulated grid");
    }
    const auto it = std::upper_bound(tau_grid_.begin(), tau_grid_.end(), tau);
    const std::size_t hi = std::min<std::size_t>(
        static_cast<std::size_t>(it - tau_grid_.begin()), tau_grid_.size() - 1);
    const std::size_t lo = hi - 1;
    const double w = (tau - tau_grid_[lo]) / (tau_grid_[hi] - tau_grid_[lo]);
    return (1.0 - w) * samples_[lo](alpha, beta) + w * samples_[hi](alpha, beta);
}

Complex BathSpec::correlation(int alpha, int beta, double tau) const
{
    require_channel(alpha, channels_, "BathSpec::correlation");
    require_channel(beta, channels_, "BathSpec::correlation");
    if (tau < 0.0 || !std::isfinite(tau)) {
        throw std::invalid_argument("BathSpec::correlation: tau must be finite and >= 0");
    }

    if (kind_ == Kind::LorentzianVacuum) {
        const Complex phase(-mu_ * tau, -omega0_ * tau);
        return 0.5 * gamma_(alpha, beta) * mu_ * std::exp(phase);
    }
    return tabulated_correlation(alpha, beta, tau);
}

Complex BathSpec::lorentzian_gamma(int alpha, int beta, double omega, TimePoint t) const
{
    const double strength = 0.5 * gamma_(alpha, beta) * mu_;
    const Complex pole(mu_, -(omega - omega0_)); // mu - i (omega - omega0)
    if (t.is_infinite()) {
        return strength / pole;
    }
    const double time = t.value();
    if (time == 0.0) {
        return Complex(0.0, 0.0);
    }
    return strength * (1.0 - std::exp(-pole * time)) / pole;
}

Complex BathSpec::tabulated_gamma(int alpha, int beta, double omega, TimePoint t) const
{
    double upper = 0.0;
    if (t.is_infinite()) {
        // The t -> inf limit needs the tail to have decayed on the grid.
        double peak = 0.0;
        for (const auto& c : samples_) {
            peak = std::max(peak, c.cwiseAbs().maxCoeff());
        }
        if (samples_.back().cwiseAbs().maxCoeff() > kTabulatedDecayTol * peak) {
            throw std::invalid_argument(
                "BathSpec::gamma_half_fourier: tabulated correlation has not decayed on the grid");
        }
        upper = tau_grid_.back();
    } else {
        upper = t.value();
        if (upper > tau_grid_.back()) {
            throw std::invalid_argument("BathSpec::gamma_half_fourier: t beyond tabulated grid");
        }
    }
    if (upper == 0.0) {
        return Complex(0.0, 0.0);
    }

    const auto integrand = [&](double tau) {
        return tabulated_correlation(alpha, beta, tau) * std::exp(Complex(0.0, omega * tau));
    };

    // Integrate cell by cell; the interpolant is smooth inside each cell.
    Complex total(0.0, 0.0);
    double scale = 0.0;
    for (const auto& c : samples_) {
        scale = std::max(scale, c.cwiseAbs().maxCoeff());
    }
    const double tol_total = kQuadratureRelTol * std::max(scale * upper, 1e-300);
    for (std::size_t i = 1; i < tau_grid_.size() && tau_grid_[i - 1] < upper; ++i) {
        const double a = tau_grid_[i - 1];
        const double b = std::min(tau_grid_[i], upper);
        total += integrate_cell(integrand, a, b, tol_total * (b - a) / upper);
    }
    return total;
}

GammaValue BathSpec::gamma_half_fourier(int alpha, int beta, double omega, TimePoint t) const
{
    require_channel(alpha, channels_, "BathSpec::gamma_half_fourier");
    require_channel(beta, channels_, "BathSpec::gamma_half_fourier");
    if (!std::isfinite(omega)) {
        throw std::invalid_argument("BathSpec::gamma_half_fourier: omega must be finite");
    }

    if (kind_ == Kind::LorentzianVacuum) {
        return GammaValue{lorentzian_gamma(alpha, beta, omega, t)};
    }
    return GammaValue{tabulated_gamma(alpha, beta, omega, t)};
}

Matrix BathSpec::gamma_matrix(double omega, TimePoint t) const
{
    Matrix G(channels_, channels_);
    for (int a = 0; a < channels_; ++a) {
        for (int b = 0; b < channels_; ++b) {
            G(a, b) = gamma_half_fourier(a, b, omega, t).value;
        }
    }
    return G;
}

Eigen::MatrixXd BathSpec::spectral_density(double omega) const
{
    const Matrix G = gamma_matrix(omega, TimePoint::infinity());
    const Eigen::MatrixXd J = G.real();
    return 0.5 * (J + J.transpose());
}

SystemModel vsystem_model(double omega1, double omega2)
{
    Eigen::VectorXd energies(3);
    energies << 0.0, omega1, omega2;
    Matrix A1 = Matrix::Zero(3, 3);
    Matrix A2 = Matrix::Zero(3, 3);
    A1(0, 1) = 1.0; // |0><1|
    A2(0, 2) = 1.0; // |0><2|
    return SystemModel(std::move(energies), {std::move(A1), std::move(A2)});
}

SystemModel qubit_model(double omega1)
{
    Eigen::VectorXd energies(2);
    energies << 0.0, omega1;
    Matrix A = Matrix::Zero(2, 2);
    A(0, 1) = 1.0; // |0><1|
    return SystemModel(std::move(energies), {std::move(A)});
}

SystemModel truncated_oscillator_model(double omega_s, int fock_levels)
{
    if (fock_levels < 2) {
        throw std::invalid_argument("truncated_oscillator_model: need at least 2 Fock levels");
    }
    const int dim = fock_levels + 1;
    Eigen::VectorXd energies(dim);
    for (int k = 0; k < dim; ++k) {
        energies(k) = omega_s * k;
    }
    Matrix a = Matrix::Zero(dim, dim);
    for (int k = 0; k + 1 < dim; ++k) {
        a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
    }
    return SystemModel(std::move(energies), {std::move(a)});
}

} // namespace redreg

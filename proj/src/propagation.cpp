// propagation.cpp — Scheme-driven master-equation integration

#include "redreg/propagation.hpp"

#include <cmath>
#include <stdexcept>

#include "redreg/linalg.hpp"
#include "redreg/ode.hpp"
#include "redreg/reference.hpp"

namespace redreg {

Vector vectorize(const Matrix& X)
{
    const int dim = static_cast<int>(X.rows());
    Vector v(dim * dim);
    for (int k = 0; k < dim; ++k) {
        for (int q = 0; q < dim; ++q) {
            v(k * dim + q) = X(k, q);
        }
    }
    return v;
}

Matrix unvectorize(const Vector& v, int dim)
{
    if (v.size() != dim * dim) {
        throw std::invalid_argument("unvectorize: size is not dim^2");
    }
    Matrix X(dim, dim);
    for (int k = 0; k < dim; ++k) {
        for (int q = 0; q < dim; ++q) {
            X(k, q) = v(k * dim + q);
        }
    }
    return X;
}

Matrix gksl_apply(const Matrix& chi, const Matrix& hamiltonian_total, const Matrix& X)
{
    const int dim = static_cast<int>(X.rows());
    const Complex minus_i(0.0, -1.0);
    Matrix out = minus_i * (hamiltonian_total * X - X * hamiltonian_total);

    const int size = dim * dim;
    for (int i = 0; i < size; ++i) {
        const int k = i / dim;
        const int q = i % dim;
        for (int j = 0; j < size; ++j) {
            const Complex c = chi(i, j);
            if (c == Complex(0.0, 0.0)) continue;
            const int n = j / dim;
            const int m = j % dim;
            // E_i X E_j^dag = X_qm |k><n|
            out(k, n) += c * X(q, m);
            // {E_j^dag E_i, X} with E_j^dag E_i = delta_nk |m><q|
            if (n == k) {
                out.row(m) -= 0.5 * c * X.row(q);
                out.col(q) -= 0.5 * c * X.col(m);
            }
        }
    }
    return out;
}

namespace {

// Per-scheme generator evaluation. Schemes frozen at t = inf cache their
// Kossakowski data; redfield-raw and nearest-psd reassemble at each stage
// time (the Lorentzian closed forms make this cheap).
class GeneratorContext {
public:
    GeneratorContext(const SystemModel& model, const BathSpec& bath, const Scheme& scheme,
                     double psd_tol)
        : model_(model), bath_(bath), scheme_(scheme), psd_tol_(psd_tol)
    {
        if (!time_dependent()) {
            Scheme frozen = scheme_;
            if (scheme_.kind == Scheme::Kind::PartialSecular && !scheme_.coarse_graining_dt) {
                frozen.coarse_graining_dt =
                    auto_coarse_graining_time(model_, bath_, TimePoint::infinity(), psd_tol_);
                if (*frozen.coarse_graining_dt == 0.0) {
                    frozen = Scheme::redfield_raw(); // already PSD, no damping needed
                }
            }
            frozen_ = apply(frozen, model_, bath_, TimePoint::infinity(), psd_tol_);
            frozen_hamiltonian_ = model_.hamiltonian() + frozen_->lamb_shift;
        }
    }

    bool time_dependent() const
    {
        return scheme_.kind == Scheme::Kind::RedfieldRaw
            || scheme_.kind == Scheme::Kind::NearestPsd;
    }

    Matrix rhs(double t, const Matrix& X) const
    {
        if (frozen_) {
            return gksl_apply(frozen_->chi, frozen_hamiltonian_, X);
        }
        const KossakowskiData data = apply(scheme_, model_, bath_, TimePoint::at(t), psd_tol_);
        return gksl_apply(data.chi, model_.hamiltonian() + data.lamb_shift, X);
    }

private:
    const SystemModel& model_;
    const BathSpec& bath_;
    Scheme scheme_;
    double psd_tol_;
    std::optional<KossakowskiData> frozen_;
    Matrix frozen_hamiltonian_;
};

void require_grid_from_zero(std::span<const double> grid, const char* where)
{
    if (grid.empty() || grid.front() != 0.0) {
        throw std::invalid_argument(std::string(where) + ": time grid must start at 0");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument(std::string(where) + ": time grid must be ascending");
        }
    }
}

void require_density_matrix(const Matrix& rho0, int dim, const char* where)
{
    if (rho0.rows() != dim || rho0.cols() != dim) {
        throw std::invalid_argument(std::string(where) + ": state dimension mismatch");
    }
    linalg::require_finite(rho0, where);
    const double scale = std::max(1.0, rho0.norm());
    if ((rho0 - rho0.adjoint()).norm() > 1e-10 * scale) {
        throw std::invalid_argument(std::string(where) + ": initial state is not Hermitian");
    }
    if (std::abs(rho0.trace() - Complex(1.0, 0.0)) > 1e-10) {
        throw std::invalid_argument(std::string(where) + ": initial state must have unit trace");
    }
    if (linalg::min_eigenvalue(rho0) < -1e-10 * scale) {
        throw std::invalid_argument(std::string(where) + ": initial state is not PSD");
    }
}

std::vector<PropagatorMatrix> integrate_propagator(std::span<const double> grid,
                                                   const Matrix& phi_start,
                                                   const SystemModel& model, const BathSpec& bath,
                                                   const Scheme& scheme, double tol)
{
    const int dim = model.dimension();
    const int size = dim * dim;
    if (phi_start.rows() != size || phi_start.cols() != size) {
        throw std::invalid_argument("propagator: initial map must be N^2 x N^2");
    }

    const GeneratorContext generator(model, bath, scheme, 1e-10);

    // The propagator satisfies the same linear equation columnwise: column j
    // is the evolution of the basis operator E_{inverse_index(j)}.
    const auto rhs = [&](double t, const ode::State& y, ode::State& dydt) {
        for (int col = 0; col < size; ++col) {
            const Matrix X = unvectorize(y.segment(col * size, size), dim);
            dydt.segment(col * size, size) = vectorize(generator.rhs(t, X));
        }
    };

    ode::State y0(size * size);
    for (int col = 0; col < size; ++col) {
        y0.segment(col * size, size) = phi_start.col(col);
    }

    std::vector<PropagatorMatrix> result(grid.size());
    ode::Options opts;
    opts.rtol = tol;
    opts.atol = 1e-4 * tol;
    ode::integrate(rhs, y0, grid, opts, [&](std::size_t index, double t, const ode::State& y) {
        Matrix phi(size, size);
        for (int col = 0; col < size; ++col) {
            phi.col(col) = y.segment(col * size, size);
        }
        result[index] = PropagatorMatrix{t, std::move(phi)};
    });
    return result;
}

} // namespace

Matrix lgks_rhs(const Matrix& rho, double t, const SystemModel& model, const BathSpec& bath,
                const Scheme& scheme, double psd_tol)
{
    if (rho.rows() != model.dimension() || rho.cols() != model.dimension()) {
        throw std::invalid_argument("lgks_rhs: state dimension mismatch");
    }
    const GeneratorContext generator(model, bath, scheme, psd_tol);
    return generator.rhs(t, rho);
}

Matrix vsystem_rhs(const Matrix& rho, double t, const VSystemParams& params)
{
    if (rho.rows() != 3 || rho.cols() != 3) {
        throw std::invalid_argument("vsystem_rhs: expected a 3x3 state");
    }
    const BathSpec bath = params.bath();
    const TimePoint tp = TimePoint::at(t);
    const double omega[2] = {params.omega1, params.omega2};

    Complex d[2][2];
    Complex phi[2][2];
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const Complex g_ab = bath.gamma_half_fourier(a, b, omega[b], tp).value;
            const Complex g_ba = bath.gamma_half_fourier(b, a, omega[a], tp).value;
            d[a][b] = g_ab + std::conj(g_ba);
            const Complex h_ab = (g_ab - std::conj(g_ba)) / Complex(0.0, 2.0);
            phi[a][b] = Complex(0.0, 1.0) * (h_ab + (a == b ? omega[a] : 0.0)) - 0.5 * d[a][b];
        }
    }

    const Complex r01 = rho(0, 1), r02 = rho(0, 2);
    const Complex r11 = rho(1, 1), r12 = rho(1, 2), r21 = rho(2, 1), r22 = rho(2, 2);

    Matrix out = Matrix::Zero(3, 3);
    out(0, 0) = d[0][0] * r11 + d[1][0] * r12 + d[0][1] * r21 + d[1][1] * r22;
    out(0, 1) = phi[0][0] * r01 + phi[1][0] * r02;
    out(0, 2) = phi[0][1] * r01 + phi[1][1] * r02;
    out(1, 1) = -d[0][0] * r11 + phi[1][0] * r12 + std::conj(phi[1][0]) * r21;
    out(1, 2) = phi[0][1] * r11 + (std::conj(phi[0][0]) + phi[1][1]) * r12
              + std::conj(phi[1][0]) * r22;
    out(2, 2) = std::conj(phi[0][1]) * r12 + phi[0][1] * r21 - d[1][1] * r22;
    out(1, 0) = std::conj(out(0, 1));
    out(2, 0) = std::conj(out(0, 2));
    out(2, 1) = std::conj(out(1, 2));
    return out;
}

Trajectory evolve(const Matrix& rho0, std::span<const double> t_grid, const SystemModel& model,
                  const BathSpec& bath, const Scheme& scheme, double tol)
{
    require_grid_from_zero(t_grid, "evolve");
    const int dim = model.dimension();
    require_density_matrix(rho0, dim, "evolve");

    const GeneratorContext generator(model, bath, scheme, 1e-10);
    const auto rhs = [&](double t, const ode::State& y, ode::State& dydt) {
        dydt = vectorize(generator.rhs(t, unvectorize(y, dim)));
    };

    Trajectory trajectory;
    trajectory.times.assign(t_grid.begin(), t_grid.end());
    trajectory.states.resize(t_grid.size());
    trajectory.trace_deviation.resize(t_grid.size());
    trajectory.min_eigenvalue.resize(t_grid.size());

    ode::Options opts;
    opts.rtol = tol;
    opts.atol = 1e-4 * tol;
    ode::integrate(rhs, vectorize(rho0), t_grid, opts,
                   [&](std::size_t index, double /*t*/, const ode::State& y) {
                       Matrix rho = unvectorize(y, dim);
                       trajectory.trace_deviation[index] = std::abs(rho.trace() - Complex(1.0, 0.0));
                       trajectory.min_eigenvalue[index] = linalg::min_eigenvalue(rho);
                       trajectory.states[index] = std::move(rho);
                   });
    return trajectory;
}

std::vector<PropagatorMatrix> propagator(std::span<const double> t_grid, const SystemModel& model,
                                         const BathSpec& bath, const Scheme& scheme, double tol)
{
    require_grid_from_zero(t_grid, "propagator");
    const int size = model.dimension() * model.dimension();
    return integrate_propagator(t_grid, Matrix::Identity(size, size), model, bath, scheme, tol);
}

std::vector<PropagatorMatrix> propagator_from(std::span<const double> t_grid,
                                              const Matrix& phi_start, const SystemModel& model,
                                              const BathSpec& bath, const Scheme& scheme,
                                              double tol)
{
    if (t_grid.empty()) {
        throw std::invalid_argument("propagator_from: empty time grid");
    }
    return integrate_propagator(t_grid, phi_start, model, bath, scheme, tol);
}

} // namespace redreg

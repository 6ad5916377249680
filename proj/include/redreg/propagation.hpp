// propagation.hpp — GKSL right-hand sides and adaptive integration of density
// matrices and full propagators under any regularization scheme.

#pragma once

#include <span>
#include <vector>

#include "redreg/regularizers.hpp"

namespace redreg {

struct VSystemParams; // reference.hpp

struct Trajectory {
    std::vector<double> times;
    std::vector<Matrix> states;          // rho(t), N x N
    std::vector<double> trace_deviation; // |Tr rho - 1|
    std::vector<double> min_eigenvalue;
};

// Propagator acting on operators flattened with vec(X)[k*N + q] = X(k, q),
// the same map as collective_index.
struct PropagatorMatrix {
    double t;
    Matrix phi; // N^2 x N^2
};

Vector vectorize(const Matrix& X);
Matrix unvectorize(const Vector& v, int dim);

// -i[H, X] + sum_ij chi_ij (E_i X E_j^dag - 1/2 {E_j^dag E_i, X}) for an
// arbitrary matrix X; H already includes the Lamb shift.
Matrix gksl_apply(const Matrix& chi, const Matrix& hamiltonian_total, const Matrix& X);

// Master-equation right-hand side for a density matrix under a scheme.
// Time-dependent schemes (redfield-raw, nearest-psd) evaluate their
// Kossakowski data at t; the remaining schemes are frozen at t = inf.
Matrix lgks_rhs(const Matrix& rho, double t, const SystemModel& model, const BathSpec& bath,
                const Scheme& scheme, double psd_tol = 1e-10);

// Independent component-wise right-hand side for the three-level V-system
// under the raw Redfield generator; cross-checks lgks_rhs.
Matrix vsystem_rhs(const Matrix& rho, double t, const VSystemParams& params);

// Adaptive RK 4(5) evolution sampled on t_grid (ascending from 0).
Trajectory evolve(const Matrix& rho0, std::span<const double> t_grid, const SystemModel& model,
                  const BathSpec& bath, const Scheme& scheme, double tol = 1e-8);

// Full propagator Phi(t, 0) on t_grid (ascending from 0): column j evolves the
// basis operator E_{inverse_index(j)}.
std::vector<PropagatorMatrix> propagator(std::span<const double> t_grid, const SystemModel& model,
                                         const BathSpec& bath, const Scheme& scheme,
                                         double tol = 1e-8);

// Intertwining leg: integrate the same linear equation from an arbitrary
// start time and initial map (e.g. Lambda(t, s) from the identity at s).
std::vector<PropagatorMatrix> propagator_from(std::span<const double> t_grid,
                                              const Matrix& phi_start, const SystemModel& model,
                                              const BathSpec& bath, const Scheme& scheme,
                                              double tol = 1e-8);

} // namespace redreg

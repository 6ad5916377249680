// reference.hpp — Ground-truth oracles: the exactly solvable three-level
// V-system (Laplace closed form and its channel extension) and the
// qubit/truncated-oscillator Kossakowski matrices.

#pragma once

#include <array>

#include "redreg/propagation.hpp"

namespace redreg {

struct DegenerateRootsError : std::runtime_error {
    explicit DegenerateRootsError(const std::string& what) : std::runtime_error(what) {}
};

// V-system: H_S = omega1 |1><1| + omega2 |2><2| with both excited levels
// decaying into a common Lorentzian vacuum bath.
struct VSystemParams {
    double omega1;
    double omega2;
    double gamma1;
    double gamma2;
    double mu;
    double omega0;

    SystemModel model() const { return vsystem_model(omega1, omega2); }
    BathSpec bath() const { return BathSpec::lorentzian_rank_one(gamma1, gamma2, mu, omega0); }
};

// Excited-state amplitude dynamics (a1(t), a2(t)) = sum_j W_j exp(r_j t) a(0).
struct ExactAmplitudeSolution {
    std::array<Complex, 3> roots;
    std::array<Eigen::Matrix2cd, 3> residues;

    Eigen::Matrix2cd transfer(double t) const; // W(t)
};

// Coefficients of the resolvent cubic Q(s) = s^3 + h1 s^2 + h2 s + h3.
std::array<Complex, 3> cubic_coefficients(const VSystemParams& params);

// Roots via companion-matrix eigenvalues plus a Newton polish; throws
// DegenerateRootsError when two roots come closer than 1e-8 * max |r|.
std::array<Complex, 3> cubic_roots(const VSystemParams& params);

ExactAmplitudeSolution solve_exact(const VSystemParams& params);

// Amplitudes at time t from the Lagrange partial-fraction form.
Eigen::Vector2cd exact_amplitudes(const VSystemParams& params, const Eigen::Vector2cd& a0,
                                  double t);

// Reduced density matrix for the pure initial state a0|0> + a1|1> + a2|2>.
Matrix exact_density(const VSystemParams& params, const Eigen::Vector3cd& psi0, double t);

// The exact dynamics as a linear trace-preserving channel on all operators:
// Phi(X) = V X V^dag + |0><0| Tr[(P1 - W^dag W) X] with V = |0><0| + W.
PropagatorMatrix exact_channel(const VSystemParams& params, double t);

// Appendix-style closed-form Kossakowski matrices used as assembler oracles.
KossakowskiData qubit_kossakowski(double omega1, const BathSpec& bath, TimePoint t);
KossakowskiData oscillator_kossakowski(double omega_s, const BathSpec& bath, TimePoint t,
                                       int fock_levels);

} // namespace redreg

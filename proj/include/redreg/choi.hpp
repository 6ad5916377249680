// choi.hpp — Choi operators of propagator matrices, complete-positivity
// checks, and the pointwise distance between two dynamics.

#pragma once

#include "redreg/propagation.hpp"

namespace redreg {

struct ChoiOperator {
    double t;
    Matrix J; // N^2 x N^2
};

enum class ChoiNorm { Frobenius, Trace };

ChoiNorm parse_choi_norm(const std::string& name);

// J = sum_nm Phi(E_nm) (x) E_nm, with the map output as the first tensor
// factor: J[(a,b),(c,d)] = [Phi(E_bd)]_{ac}.
ChoiOperator choi(const PropagatorMatrix& phi);

struct CpCheck {
    bool is_cp;
    double min_eig;
};

// CP iff the Choi operator is PSD: min eigenvalue >= -tol * ||J||_F.
CpCheck cp_check(const ChoiOperator& J, double tol);

// delta(t) = || J(Phi) - J(Phi_exact) || in the requested norm.
double delta(const PropagatorMatrix& scheme_phi, const PropagatorMatrix& exact_phi, ChoiNorm norm);

} // namespace redreg

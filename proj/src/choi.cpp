// choi.cpp — Choi-operator construction and the pointwise channel distance

#include "redreg/choi.hpp"

#include <cmath>
#include <stdexcept>

#include "redreg/linalg.hpp"

namespace redreg {

ChoiNorm parse_choi_norm(const std::string& name)
{
    if (name == "frobenius") return ChoiNorm::Frobenius;
    if (name == "trace") return ChoiNorm::Trace;
    throw std::invalid_argument("parse_choi_norm: unknown norm '" + name + "'");
}

ChoiOperator choi(const PropagatorMatrix& phi)
{
    const auto size = phi.phi.rows();
    if (size == 0 || phi.phi.cols() != size) {
        throw std::invalid_argument("choi: propagator matrix must be square");
    }
    const int dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(size))));
    if (static_cast<Eigen::Index>(dim) * dim != size) {
        throw std::invalid_argument("choi: propagator dimension is not a perfect square");
    }

    Matrix J(size, size);
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            for (int c = 0; c < dim; ++c) {
                for (int d = 0; d < dim; ++d) {
                    // [Phi(E_bd)]_{ac} in the shared vectorization map
                    J(a * dim + b, c * dim + d) = phi.phi(a * dim + c, b * dim + d);
                }
            }
        }
    }
    return ChoiOperator{phi.t, std::move(J)};
}

CpCheck cp_check(const ChoiOperator& J, double tol)
{
    const double min_eig = linalg::min_eigenvalue(J.J);
    return CpCheck{min_eig >= -tol * linalg::frobenius_norm(J.J), min_eig};
}

double delta(const PropagatorMatrix& scheme_phi, const PropagatorMatrix& exact_phi, ChoiNorm norm)
{
    if (scheme_phi.phi.rows() != exact_phi.phi.rows()) {
        throw std::invalid_argument("delta: propagator dimensions differ");
    }
    if (scheme_phi.t != exact_phi.t) {
        throw std::invalid_argument("delta: propagators are at different times");
    }
    const Matrix diff = choi(scheme_phi).J - choi(exact_phi).J;
    return norm == ChoiNorm::Frobenius ? linalg::frobenius_norm(diff) : linalg::trace_norm(diff);
}

} // namespace redreg

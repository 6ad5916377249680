// regularizers.cpp — Scheme implementations and the coarse-graining search

#include "redreg/regularizers.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "redreg/linalg.hpp"

namespace redreg {

Scheme Scheme::partial_secular(double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("Scheme::partial_secular: dt must be finite and > 0");
    }
    return {Kind::PartialSecular, dt};
}

Scheme Scheme::parse(const std::string& name)
{
    if (name == "redfield-raw") return redfield_raw();
    if (name == "nearest-psd") return nearest_psd();
    if (name == "secular") return secular();
    if (name == "ule") return ule();
    if (name == "partial-secular" || name == "partial-secular:auto") {
        return partial_secular_auto();
    }
    const std::string prefix = "partial-secular:dt=";
    if (name.rfind(prefix, 0) == 0) {
        std::size_t consumed = 0;
        const std::string tail = name.substr(prefix.size());
        const double dt = std::stod(tail, &consumed);
        if (consumed != tail.size()) {
            throw std::invalid_argument("Scheme::parse: malformed dt in '" + name + "'");
        }
        return partial_secular(dt);
    }
    throw std::invalid_argument("Scheme::parse: unknown scheme '" + name + "'");
}

std::string Scheme::name() const
{
    switch (kind) {
    case Kind::RedfieldRaw: return "redfield-raw";
    case Kind::NearestPsd: return "nearest-psd";
    case Kind::Secular: return "secular";
    case Kind::Ule: return "ule";
    case Kind::PartialSecular:
        if (!coarse_graining_dt) return "partial-secular:auto";
        return "partial-secular:dt=" + std::to_string(*coarse_graining_dt);
    }
    throw std::logic_error("Scheme::name: unreachable");
}

namespace {

double sinc(double x)
{
    if (x == 0.0) return 1.0;
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

std::vector<double> collective_bohr_frequencies(const SystemModel& model)
{
    const int dim = model.dimension();
    std::vector<double> omega(static_cast<std::size_t>(dim * dim));
    for (int i = 0; i < dim * dim; ++i) {
        omega[static_cast<std::size_t>(i)] = bohr_frequency_of(model, i);
    }
    return omega;
}

bool chi_is_psd(const Matrix& chi, double psd_tol)
{
    const double scale = linalg::frobenius_norm(chi);
    if (scale == 0.0) return true;
    return linalg::min_eigenvalue(chi) >= -psd_tol * scale;
}

} // namespace

KossakowskiData partial_secular(const KossakowskiData& data, double dt, const SystemModel& model)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("partial_secular: dt must be finite and > 0");
    }
    const std::vector<double> omega = collective_bohr_frequencies(model);
    const int size = static_cast<int>(omega.size());
    if (data.chi.rows() != size) {
        throw std::invalid_argument("partial_secular: chi dimension does not match the model");
    }

    KossakowskiData result = data;
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            const double damping = sinc(0.5 * (omega[static_cast<std::size_t>(j)]
                                               - omega[static_cast<std::size_t>(i)]) * dt);
            result.chi(i, j) *= damping;
            result.eta(i, j) *= damping;
        }
    }
    result.lamb_shift = lamb_shift_from_eta(result.eta, model.dimension());
    return result;
}

KossakowskiData secular(const KossakowskiData& data, const SystemModel& model)
{
    const std::vector<double> omega = collective_bohr_frequencies(model);
    const int size = static_cast<int>(omega.size());
    if (data.chi.rows() != size) {
        throw std::invalid_argument("secular: chi dimension does not match the model");
    }

    double omega_scale = 0.0;
    for (double w : omega) {
        omega_scale = std::max(omega_scale, std::abs(w));
    }
    const double tol = 1e-9 * omega_scale;

    KossakowskiData result = data;
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            if (std::abs(omega[static_cast<std::size_t>(i)]
                         - omega[static_cast<std::size_t>(j)]) > tol) {
                result.chi(i, j) = Complex(0.0, 0.0);
            }
        }
    }
    return result;
}

KossakowskiData ule(const SystemModel& model, const BathSpec& bath)
{
    const int channels = model.channel_count();
    if (channels != bath.channel_count()) {
        throw std::invalid_argument("ule: model and bath channel counts differ");
    }
    const int dim = model.dimension();
    const int size = dim * dim;

    // sqrt(J(omega)) per distinct Bohr frequency.
    std::map<double, Matrix> roots;
    const auto sqrt_j_at = [&](double w) -> const Matrix& {
        auto it = roots.find(w);
        if (it == roots.end()) {
            const Eigen::MatrixXd J = bath.spectral_density(w);
            const double scale = J.norm();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(J);
            if (solver.eigenvalues().minCoeff() < -1e-10 * std::max(scale, 1e-300)) {
                throw std::runtime_error("ule: spectral density is not PSD at a sampled frequency");
            }
            it = roots.emplace(w, linalg::psd_sqrt(J.cast<Complex>())).first;
        }
        return it->second;
    };

    // chi_ij = 2 sum_g u_{g,i} conj(u_{g,j}) with u_i = sqrt(J(omega_i)) a_i:
    // a Gram matrix, PSD by construction.
    Matrix U = Matrix::Zero(channels, size);
    for (int i = 0; i < size; ++i) {
        const auto [k, q] = inverse_index(i, dim);
        Vector a(channels);
        for (int beta = 0; beta < channels; ++beta) {
            a(beta) = model.coupling(beta)(k, q);
        }
        if (a.squaredNorm() == 0.0) continue;
        U.col(i) = sqrt_j_at(model.bohr_frequency(k, q)) * a;
    }
    const Matrix V = U.conjugate();

    KossakowskiData raw = kossakowski(model, bath, TimePoint::infinity());
    raw.chi = 2.0 * V.adjoint() * V;
    return raw;
}

double auto_coarse_graining_time(const SystemModel& model, const BathSpec& bath, TimePoint t,
                                 double psd_tol)
{
    if (psd_tol < 0.0) {
        throw std::invalid_argument("auto_coarse_graining_time: psd_tol must be >= 0");
    }
    const KossakowskiData data = kossakowski(model, bath, t);
    if (chi_is_psd(data.chi, psd_tol)) {
        return 0.0;
    }

    const std::vector<double> omega = collective_bohr_frequencies(model);
    double max_gap = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        for (std::size_t j = 0; j < omega.size(); ++j) {
            max_gap = std::max(max_gap, std::abs(omega[j] - omega[i]));
        }
    }
    if (!chi_is_psd(secular(data, model).chi, psd_tol) || max_gap == 0.0) {
        throw std::runtime_error(
            "auto_coarse_graining_time: secular limit is not PSD; no coarse-graining time exists");
    }

    const auto psd_at = [&](double dt) {
        return chi_is_psd(partial_secular(data, dt, model).chi, psd_tol);
    };

    // Exponential bracketing upward from a sub-resolution start, then bisection.
    double lo = 0.0;
    double hi = 0.1 / max_gap;
    int expansions = 0;
    while (!psd_at(hi)) {
        lo = hi;
        hi *= 2.0;
        if (++expansions > 200) {
            throw std::runtime_error("auto_coarse_graining_time: bracketing failed to find a PSD dt");
        }
    }
    for (int step = 0; step < 60 && (hi - lo) > 1e-3 * hi; ++step) {
        const double mid = 0.5 * (lo + hi);
        if (psd_at(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

KossakowskiData apply(const Scheme& scheme, const SystemModel& model, const BathSpec& bath,
                      TimePoint t, double psd_tol)
{
    if (!scheme.supports_finite_time() && !t.is_infinite()) {
        throw std::invalid_argument("apply: scheme '" + scheme.name()
                                    + "' is only defined at t = inf");
    }

    switch (scheme.kind) {
    case Scheme::Kind::RedfieldRaw:
        return kossakowski(model, bath, t);
    case Scheme::Kind::NearestPsd: {
        KossakowskiData data = kossakowski(model, bath, t);
        data.chi = linalg::nearest_psd(data.chi);
        return data;
    }
    case Scheme::Kind::PartialSecular: {
        const double dt = scheme.coarse_graining_dt
            ? *scheme.coarse_graining_dt
            : auto_coarse_graining_time(model, bath, t, psd_tol);
        const KossakowskiData data = kossakowski(model, bath, t);
        if (dt == 0.0) {
            return data; // already PSD, sinc(0) = 1 everywhere
        }
        return partial_secular(data, dt, model);
    }
    case Scheme::Kind::Secular:
        return secular(kossakowski(model, bath, t), model);
    case Scheme::Kind::Ule:
        return ule(model, bath);
    }
    throw std::logic_error("apply: unreachable");
}

} // namespace redreg

// regularizers.hpp — The competing Kossakowski-regularization schemes and the
// automatic coarse-graining-time search.

#pragma once

#include <optional>
#include <string>

#include "redreg/redfield.hpp"

namespace redreg {

// Regularization scheme selector. PartialSecular carries an explicit
// coarse-graining time or resolves it automatically from the PSD search.
struct Scheme {
    enum class Kind { RedfieldRaw, NearestPsd, PartialSecular, Secular, Ule };

    Kind kind{Kind::RedfieldRaw};
    std::optional<double> coarse_graining_dt; // PartialSecular only; nullopt = auto

    static Scheme redfield_raw() { return {Kind::RedfieldRaw, std::nullopt}; }
    static Scheme nearest_psd() { return {Kind::NearestPsd, std::nullopt}; }
    static Scheme partial_secular_auto() { return {Kind::PartialSecular, std::nullopt}; }
    static Scheme partial_secular(double dt);
    static Scheme secular() { return {Kind::Secular, std::nullopt}; }
    static Scheme ule() { return {Kind::Ule, std::nullopt}; }

    // Parse "redfield-raw", "nearest-psd", "partial-secular[:auto|:dt=<x>]",
    // "secular", "ule".
    static Scheme parse(const std::string& name);
    std::string name() const;

    // Secular and ULE are defined through the second-Markov Gamma(omega) and
    // only exist at t = inf.
    bool supports_finite_time() const { return kind != Kind::Secular && kind != Kind::Ule; }
};

// Entrywise sinc damping chi_ij -> chi_ij sinc((omega_j - omega_i) dt / 2),
// applied to eta as well; the Lamb shift is rebuilt from the damped eta.
KossakowskiData partial_secular(const KossakowskiData& data, double dt, const SystemModel& model);

// Keep only entries whose Bohr frequencies coincide (within a degeneracy
// tolerance of 1e-9 relative to the largest |omega|). The Lamb shift is left
// untouched.
KossakowskiData secular(const KossakowskiData& data, const SystemModel& model);

// Universal-Lindblad-style geometric-mean replacement: PSD by construction.
// Second-Markov only; the Lamb shift is H_LS(inf).
KossakowskiData ule(const SystemModel& model, const BathSpec& bath);

// Smallest coarse-graining time (1e-3 relative bisection accuracy) whose
// sinc-damped chi is PSD within psd_tol * ||chi||_F. Returns 0 when chi is
// already PSD.
double auto_coarse_graining_time(const SystemModel& model, const BathSpec& bath, TimePoint t,
                                 double psd_tol);

// Dispatch: assemble chi(t) and regularize it according to the scheme.
KossakowskiData apply(const Scheme& scheme, const SystemModel& model, const BathSpec& bath,
                      TimePoint t, double psd_tol = 1e-10);

} // namespace redreg

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "redreg/regularizers.hpp"

#include "redreg/linalg.hpp"
#include "support.hpp"

using namespace redreg;

namespace {

const VSystemParams kParams = test::slow_vsystem();

Eigen::Matrix2cd block_of(const Matrix& chi)
{
    return chi.block<2, 2>(1, 1);
}

} // namespace

TEST_CASE("scheme parsing round-trips")
{
    CHECK(Scheme::parse("redfield-raw").kind == Scheme::Kind::RedfieldRaw);
    CHECK(Scheme::parse("nearest-psd").kind == Scheme::Kind::NearestPsd);
    CHECK(Scheme::parse("secular").kind == Scheme::Kind::Secular);
    CHECK(Scheme::parse("ule").kind == Scheme::Kind::Ule);
    CHECK(Scheme::parse("partial-secular").coarse_graining_dt == std::nullopt);
    CHECK(Scheme::parse("partial-secular:auto").coarse_graining_dt == std::nullopt);
    CHECK(Scheme::parse("partial-secular:dt=0.5").coarse_graining_dt == 0.5);
    CHECK_THROWS_AS(Scheme::parse("exact"), std::invalid_argument);
    CHECK_THROWS_AS(Scheme::parse("partial-secular:dt=zero"), std::invalid_argument);
    CHECK_THROWS_AS(Scheme::parse("partial-secular:dt=-1"), std::invalid_argument);
    CHECK(Scheme::parse(Scheme::partial_secular_auto().name()).kind
          == Scheme::Kind::PartialSecular);
}

TEST_CASE("raw scheme is the identity on chi")
{
    const KossakowskiData raw = kossakowski(kParams.model(), kParams.bath(), TimePoint::at(0.7));
    const KossakowskiData dispatched =
        apply(Scheme::redfield_raw(), kParams.model(), kParams.bath(), TimePoint::at(0.7));
    CHECK((raw.chi - dispatched.chi).norm() == 0.0);
    CHECK((raw.lamb_shift - dispatched.lamb_shift).norm() == 0.0);
}

TEST_CASE("nearest-psd scheme projects chi and keeps the Lamb shift")
{
    const KossakowskiData raw = kossakowski(kParams.model(), kParams.bath(), TimePoint::infinity());
    const KossakowskiData projected =
        apply(Scheme::nearest_psd(), kParams.model(), kParams.bath(), TimePoint::infinity());

    CHECK((projected.chi - linalg::nearest_psd(raw.chi)).norm() <= 1e-14);
    CHECK((projected.lamb_shift - raw.lamb_shift).norm() == 0.0);
    CHECK(linalg::min_eigenvalue(projected.chi) >= -1e-12 * projected.chi.norm());

    // eigendecomposition oracle on the 2x2 block
    const Eigen::Matrix2cd block = block_of(raw.chi);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(block);
    Eigen::Matrix2cd expected = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i) {
        if (solver.eigenvalues()(i) > 0.0) {
            expected += solver.eigenvalues()(i) * solver.eigenvectors().col(i)
                      * solver.eigenvectors().col(i).adjoint();
        }
    }
    CHECK((block_of(projected.chi) - expected).norm() <= 1e-13);

    // projection is a fixed point on an already-PSD chi
    const BathSpec qubit_bath = BathSpec::lorentzian(Eigen::MatrixXd::Identity(1, 1), 4.0, 1.0);
    const KossakowskiData qubit_raw = kossakowski(qubit_model(1.0), qubit_bath, TimePoint::infinity());
    const KossakowskiData qubit_proj =
        apply(Scheme::nearest_psd(), qubit_model(1.0), qubit_bath, TimePoint::infinity());
    CHECK((qubit_proj.chi - qubit_raw.chi).norm() <= 1e-14 * qubit_raw.chi.norm());
}

TEST_CASE("partial secular damping")
{
    const SystemModel model = kParams.model();
    const KossakowskiData raw = kossakowski(model, kParams.bath(), TimePoint::infinity());

    // dt -> 0 leaves chi unchanged
    const KossakowskiData tiny = partial_secular(raw, 1e-12, model);
    CHECK((tiny.chi - raw.chi).norm() <= 1e-12 * raw.chi.norm());

    // resonant entries (equal Bohr frequencies) survive any dt
    for (double dt : {0.5, 3.0, 100.0}) {
        const KossakowskiData damped = partial_secular(raw, dt, model);
        CHECK(damped.chi(1, 1) == raw.chi(1, 1));
        CHECK(damped.chi(2, 2) == raw.chi(2, 2));
    }

    // dt = 2 pi / gap puts the off-resonant entry at the sinc zero
    const double gap = kParams.omega2 - kParams.omega1;
    const KossakowskiData zeroed = partial_secular(raw, 2.0 * M_PI / gap, model);
    CHECK(std::abs(zeroed.chi(1, 2)) <= 1e-15 * std::abs(raw.chi(1, 2)));

    // the Lamb shift coefficients are damped the same way
    const KossakowskiData damped = partial_secular(raw, 1.5, model);
    const double sinc_factor = std::sin(0.5 * gap * 1.5) / (0.5 * gap * 1.5);
    CHECK(std::abs(damped.eta(1, 2) - raw.eta(1, 2) * sinc_factor) <= 1e-15);
    CHECK((damped.lamb_shift - lamb_shift_from_eta(damped.eta, 3)).norm() == 0.0);

    CHECK_THROWS_AS(partial_secular(raw, 0.0, model), std::invalid_argument);
    CHECK_THROWS_AS(partial_secular(raw, -1.0, model), std::invalid_argument);
}

TEST_CASE("partial secular approaches the secular limit as dt grows")
{
    const SystemModel model = kParams.model();
    const KossakowskiData raw = kossakowski(model, kParams.bath(), TimePoint::infinity());
    const KossakowskiData sec = secular(raw, model);

    const double min_gap = kParams.omega2 - kParams.omega1; // smallest nonzero gap
    const KossakowskiData damped = partial_secular(raw, 1e6 / min_gap, model);
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            if (std::abs(sec.chi(i, j)) == 0.0 && std::abs(raw.chi(i, j)) > 0.0) {
                CHECK(std::abs(damped.chi(i, j)) <= 1e-5 * std::abs(raw.chi(i, j)));
            } else {
                CHECK(std::abs(damped.chi(i, j) - sec.chi(i, j)) <= 1e-5 * raw.chi.norm());
            }
        }
    }
}

TEST_CASE("secular filter")
{
    const SystemModel model = kParams.model();
    const KossakowskiData raw = kossakowski(model, kParams.bath(), TimePoint::infinity());
    const KossakowskiData sec = secular(raw, model);

    // diagonal entries always survive; the off-diagonal block entries vanish
    CHECK(sec.chi(1, 1) == raw.chi(1, 1));
    CHECK(sec.chi(2, 2) == raw.chi(2, 2));
    CHECK(std::abs(sec.chi(1, 2)) == 0.0);
    CHECK(std::abs(sec.chi(2, 1)) == 0.0);
    CHECK(linalg::min_eigenvalue(sec.chi) >= -1e-12 * sec.chi.norm());

    // fully degenerate excited levels: everything is resonant, chi unchanged
    const VSystemParams degenerate{1.0, 1.0, 1.0, 1.0, 4.0, 1.0};
    const KossakowskiData raw_deg =
        kossakowski(degenerate.model(), degenerate.bath(), TimePoint::infinity());
    const KossakowskiData sec_deg = secular(raw_deg, degenerate.model());
    CHECK((sec_deg.chi - raw_deg.chi).norm() == 0.0);
}

TEST_CASE("automatic coarse-graining time search")
{
    const SystemModel model = kParams.model();
    const BathSpec bath = kParams.bath();
    const double psd_tol = 1e-10;

    const double dt = auto_coarse_graining_time(model, bath, TimePoint::infinity(), psd_tol);
    CHECK(dt > 0.0);
    // golden value from the first run of this search (1e-3 relative bisection)
    CHECK(dt == doctest::Approx(0.43125).epsilon(2e-3));

    const KossakowskiData raw = kossakowski(model, bath, TimePoint::infinity());
    const auto is_psd = [&](const Matrix& chi) {
        return linalg::min_eigenvalue(chi) >= -psd_tol * chi.norm();
    };
    CHECK(is_psd(partial_secular(raw, dt, model).chi));
    CHECK_FALSE(is_psd(partial_secular(raw, 0.5 * dt, model).chi));

    // an already-PSD chi needs no damping at all
    const BathSpec qubit_bath = BathSpec::lorentzian(Eigen::MatrixXd::Identity(1, 1), 4.0, 1.0);
    CHECK(auto_coarse_graining_time(qubit_model(1.0), qubit_bath, TimePoint::infinity(), psd_tol)
          == 0.0);
}

TEST_CASE("ULE is PSD by construction")
{
    const KossakowskiData ule_data = ule(kParams.model(), kParams.bath());
    CHECK(linalg::min_eigenvalue(ule_data.chi) >= -1e-12 * ule_data.chi.norm());
    CHECK((ule_data.chi - ule_data.chi.adjoint()).norm() <= 1e-14 * ule_data.chi.norm());

    // Lamb shift is the raw second-Markov one
    const KossakowskiData raw = kossakowski(kParams.model(), kParams.bath(), TimePoint::infinity());
    CHECK((ule_data.lamb_shift - raw.lamb_shift).norm() == 0.0);

    // zero couplings: everything vanishes
    Eigen::VectorXd energies(3);
    energies << 0.0, 1.0, 2.0;
    const SystemModel silent(energies, {Matrix::Zero(3, 3), Matrix::Zero(3, 3)});
    CHECK(ule(silent, kParams.bath()).chi.norm() == 0.0);
}

TEST_CASE("ULE collapses to 2 J0 |a><a| when one frequency is sampled")
{
    // truncated oscillator: all coupled Bohr frequencies equal omega_s
    const double omega_s = 1.3;
    const SystemModel model = truncated_oscillator_model(omega_s, 3);
    const BathSpec bath = BathSpec::lorentzian(Eigen::MatrixXd::Identity(1, 1), 4.0, 1.0);
    const KossakowskiData ule_data = ule(model, bath);

    const double j0 = bath.spectral_density(omega_s)(0, 0);
    Vector a_vec = Vector::Zero(16);
    for (int k = 0; k < 3; ++k) {
        a_vec(collective_index(k, k + 1, 4)) = std::sqrt(static_cast<double>(k + 1));
    }
    const Matrix expected = 2.0 * j0 * a_vec * a_vec.adjoint();
    CHECK((ule_data.chi - expected).norm() <= 1e-13 * expected.norm());
}

TEST_CASE("ULE is invariant under relabeling of degenerate levels")
{
    // two degenerate excited levels, symmetric rates; swapping the labels
    // permutes the collective indices but must not change the physics
    const double mu = 4.0, omega0 = 1.0;
    const BathSpec bath = BathSpec::lorentzian_rank_one(1.0, 1.0, mu, omega0);

    Eigen::VectorXd energies(3);
    energies << 0.0, 1.0, 1.0;
    Matrix A1 = Matrix::Zero(3, 3), A2 = Matrix::Zero(3, 3);
    A1(0, 1) = 1.0;
    A2(0, 2) = 1.0;
    const SystemModel direct(energies, {A1, A2});
    const SystemModel relabeled(energies, {A2, A1}); // channel 1 now drives level 2

    const Matrix chi_a = ule(direct, bath).chi;
    const Matrix chi_b = ule(relabeled, bath).chi;

    // swap levels 1 <-> 2 in the collective indices of chi_b
    const auto swap_level = [](int level) { return level == 1 ? 2 : (level == 2 ? 1 : 0); };
    Matrix chi_b_permuted = Matrix::Zero(9, 9);
    for (int i = 0; i < 9; ++i) {
        const auto [k, q] = inverse_index(i, 3);
        const int pi = collective_index(swap_level(k), swap_level(q), 3);
        for (int j = 0; j < 9; ++j) {
            const auto [n, m] = inverse_index(j, 3);
            const int pj = collective_index(swap_level(n), swap_level(m), 3);
            chi_b_permuted(pi, pj) = chi_b(i, j);
        }
    }
    CHECK((chi_a - chi_b_permuted).norm() <= 1e-13 * chi_a.norm());
}

TEST_CASE("ULE rejects corrupt spectral data")
{
    // tabulated 'correlation' whose Fourier transform is indefinite
    std::vector<double> grid;
    std::vector<Matrix> samples;
    for (int i = 0; i <= 6000; ++i) {
        const double tau = 12.0 * i / 6000.0;
        grid.push_back(tau);
        Matrix c(2, 2);
        const double envelope = std::exp(-2.0 * tau);
        c << 0.1 * envelope, 1.0 * envelope, 1.0 * envelope, 0.1 * envelope;
        samples.push_back(std::move(c));
    }
    const BathSpec corrupt = BathSpec::tabulated(grid, samples);
    CHECK_THROWS_AS(ule(test::slow_vsystem().model(), corrupt), std::runtime_error);
}

TEST_CASE("time-independent schemes refuse finite times")
{
    CHECK_THROWS_AS(apply(Scheme::secular(), kParams.model(), kParams.bath(), TimePoint::at(1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply(Scheme::ule(), kParams.model(), kParams.bath(), TimePoint::at(1.0)),
                    std::invalid_argument);
    CHECK_NOTHROW(apply(Scheme::partial_secular_auto(), kParams.model(), kParams.bath(),
                        TimePoint::at(1.0)));
}

TEST_CASE("nearest-psd is the closest PSD choice among the schemes")
{
    const SystemModel model = kParams.model();
    const BathSpec bath = kParams.bath();
    const KossakowskiData raw = kossakowski(model, bath, TimePoint::infinity());

    const Matrix projected = apply(Scheme::nearest_psd(), model, bath, TimePoint::infinity()).chi;
    const Matrix partial =
        apply(Scheme::partial_secular_auto(), model, bath, TimePoint::infinity()).chi;
    const Matrix geometric = apply(Scheme::ule(), model, bath, TimePoint::infinity()).chi;
    const Matrix sec = apply(Scheme::secular(), model, bath, TimePoint::infinity()).chi;

    const double d_projected = (raw.chi - projected).norm();
    CHECK(d_projected <= (raw.chi - partial).norm() + 1e-12);
    CHECK(d_projected <= (raw.chi - geometric).norm() + 1e-12);
    CHECK(d_projected <= (raw.chi - sec).norm() + 1e-12);
}

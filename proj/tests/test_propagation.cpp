#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "redreg/propagation.hpp"

#include "redreg/linalg.hpp"
#include "redreg/ode.hpp"
#include "support.hpp"

using namespace redreg;

namespace {

const VSystemParams kParams = test::slow_vsystem();

const std::vector<Scheme> kAllSchemes = {
    Scheme::redfield_raw(), Scheme::nearest_psd(), Scheme::partial_secular_auto(),
    Scheme::secular(), Scheme::ule()};

} // namespace

TEST_CASE("vectorize follows the collective index map")
{
    auto gen = test::rng(1);
    const Matrix X = test::random_matrix(gen, 3, 3);
    const Vector v = vectorize(X);
    for (int k = 0; k < 3; ++k) {
        for (int q = 0; q < 3; ++q) {
            CHECK(v(collective_index(k, q, 3)) == X(k, q));
        }
    }
    CHECK((unvectorize(v, 3) - X).norm() == 0.0);
    CHECK_THROWS_AS(unvectorize(v, 2), std::invalid_argument);
}

TEST_CASE("closed-system right-hand side is the bare commutator")
{
    const VSystemParams silent{1.0, 2.0, 0.0, 0.0, 4.0, 1.5};
    auto gen = test::rng(2);
    Matrix rho = test::random_hermitian(gen, 3);
    rho /= rho.trace().real();

    const Matrix rhs = lgks_rhs(rho, 0.5, silent.model(), silent.bath(), Scheme::redfield_raw());
    const Matrix H = silent.model().hamiltonian();
    const Matrix expected = Complex(0.0, -1.0) * (H * rho - rho * H);
    CHECK((rhs - expected).norm() <= 1e-13 * std::max(1.0, expected.norm()));
}

TEST_CASE("GKSL right-hand side is traceless and Hermiticity-preserving")
{
    auto gen = test::rng(3);
    for (const Scheme& scheme : kAllSchemes) {
        const Matrix rho = test::random_hermitian(gen, 3);
        const Matrix rhs = lgks_rhs(rho, 0.8, kParams.model(), kParams.bath(), scheme);
        CHECK(std::abs(rhs.trace()) <= 1e-12 * std::max(1.0, rho.norm()));
        CHECK((rhs - rhs.adjoint()).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
    }
}

TEST_CASE("secular dissipator drains the maximally mixed state into the ground state")
{
    const KossakowskiData sec =
        apply(Scheme::secular(), kParams.model(), kParams.bath(), TimePoint::infinity());
    const Matrix rho = Matrix::Identity(3, 3) / 3.0;
    const Matrix flow = gksl_apply(sec.chi, Matrix::Zero(3, 3), rho);

    CHECK(flow(0, 0).real() > 0.0);
    CHECK(flow(1, 1).real() < 0.0);
    CHECK(flow(2, 2).real() < 0.0);
    CHECK(std::abs(flow(0, 0) + flow(1, 1) + flow(2, 2)) <= 1e-14);
    for (int k = 0; k < 3; ++k) {
        for (int q = 0; q < 3; ++q) {
            if (k != q) CHECK(std::abs(flow(k, q)) <= 1e-14);
        }
    }
}

TEST_CASE("component V-system equations match the generic GKSL path")
{
    // ground state is stationary
    Matrix ground = Matrix::Zero(3, 3);
    ground(0, 0) = 1.0;
    CHECK(vsystem_rhs(ground, 0.5, kParams).norm() <= 1e-14);

    // dual-implementation oracle on random Hermitian states
    auto gen = test::rng(4);
    for (double t : {0.1, 1.0, 10.0}) {
        const Matrix rho = test::random_hermitian(gen, 3);
        const Matrix component = vsystem_rhs(rho, t, kParams);
        const Matrix generic =
            lgks_rhs(rho, t, kParams.model(), kParams.bath(), Scheme::redfield_raw());
        CHECK((component - generic).norm() <= 1e-10 * std::max(1.0, generic.norm()));
    }

    // vanishing rates: coherences rotate at the bare Bohr frequencies
    const VSystemParams silent{1.0, 2.0, 0.0, 0.0, 4.0, 1.5};
    auto gen2 = test::rng(5);
    const Matrix rho = test::random_hermitian(gen2, 3);
    const Matrix rotation = vsystem_rhs(rho, 0.3, silent);
    CHECK(rotation(0, 1) == Complex(0.0, 1.0) * silent.omega1 * rho(0, 1));
    CHECK(rotation(0, 2) == Complex(0.0, 1.0) * silent.omega2 * rho(0, 2));
    CHECK(std::abs(rotation(1, 1)) == 0.0);

    CHECK_THROWS_AS(vsystem_rhs(Matrix::Zero(2, 2), 0.1, kParams), std::invalid_argument);
}

TEST_CASE("free evolution keeps coherence magnitudes constant")
{
    const VSystemParams silent{1.0, 2.0, 0.0, 0.0, 4.0, 1.5};
    const Matrix rho0 = test::density_from_amplitudes(test::excited_superposition());
    const auto grid = test::linspace(0.0, 5.0, 21);

    const Trajectory run =
        evolve(rho0, grid, silent.model(), silent.bath(), Scheme::redfield_raw(), 1e-9);
    const Matrix H = silent.model().hamiltonian();
    for (std::size_t s = 0; s < run.times.size(); ++s) {
        const double t = run.times[s];
        Matrix U = Matrix::Zero(3, 3);
        for (int k = 0; k < 3; ++k) {
            U(k, k) = std::exp(Complex(0.0, -H(k, k).real() * t));
        }
        CHECK((run.states[s] - U * rho0 * U.adjoint()).norm() <= 1e-8);
        CHECK(std::abs(std::abs(run.states[s](1, 2)) - std::abs(rho0(1, 2))) <= 1e-8);
    }
}

TEST_CASE("trajectories preserve trace and Hermiticity; PSD schemes preserve positivity")
{
    const Matrix rho0 = test::density_from_amplitudes(test::excited_superposition());
    const auto grid = test::linspace(0.0, 10.0, 41);

    for (const Scheme& scheme : kAllSchemes) {
        const Trajectory run = evolve(rho0, grid, kParams.model(), kParams.bath(), scheme);
        for (std::size_t s = 0; s < run.times.size(); ++s) {
            CHECK(run.trace_deviation[s] <= 1e-8);
            const Matrix& rho = run.states[s];
            CHECK((rho - rho.adjoint()).norm() <= 1e-9 * std::max(1.0, rho.norm()));
        }
        if (scheme.kind != Scheme::Kind::RedfieldRaw) {
            for (double min_eig : run.min_eigenvalue) {
                CHECK(min_eig >= -1e-8);
            }
        }
        // the vacuum bath absorbs both excitations
        CHECK(run.states.back()(0, 0).real() > 0.99);
    }
}

TEST_CASE("a vanishing time window leaves the state untouched")
{
    const Matrix rho0 = test::density_from_amplitudes(test::excited_superposition());
    const std::vector<double> grid = {0.0, 1e-8};
    for (const Scheme& scheme : kAllSchemes) {
        const Trajectory run = evolve(rho0, grid, kParams.model(), kParams.bath(), scheme);
        CHECK((run.states.back() - rho0).norm() <= 1e-6);
    }
}

TEST_CASE("tightening the tolerance converges toward a reference trajectory")
{
    const Matrix rho0 = test::density_from_amplitudes(test::excited_superposition());
    const auto grid = test::linspace(0.0, 5.0, 11);

    const auto deviation_at = [&](double tol) {
        const Trajectory run =
            evolve(rho0, grid, kParams.model(), kParams.bath(), Scheme::nearest_psd(), tol);
        const Trajectory reference =
            evolve(rho0, grid, kParams.model(), kParams.bath(), Scheme::nearest_psd(), 1e-12);
        double worst = 0.0;
        for (std::size_t s = 0; s < grid.size(); ++s) {
            worst = std::max(worst, (run.states[s] - reference.states[s]).norm());
        }
        return worst;
    };

    const double coarse = deviation_at(1e-4);
    const double fine = deviation_at(1e-6);
    const double finest = deviation_at(1e-8);
    CHECK(fine < coarse);
    CHECK(finest < fine);
}

TEST_CASE("evolve validates its inputs")
{
    const auto grid = test::linspace(0.0, 1.0, 5);
    const Matrix rho0 = test::density_from_amplitudes(test::excited_superposition());

    Matrix not_hermitian = rho0;
    not_hermitian(0, 1) += Complex(0.1, 0.0);
    CHECK_THROWS_AS(evolve(not_hermitian, grid, kParams.model(), kParams.bath(),
                           Scheme::redfield_raw()),
                    std::invalid_argument);

    CHECK_THROWS_AS(evolve(2.0 * rho0, grid, kParams.model(), kParams.bath(),
                           Scheme::redfield_raw()),
                    std::invalid_argument);

    Matrix indefinite = rho0;
    indefinite(2, 2) -= 0.5;
    indefinite(0, 0) += 0.5;
    CHECK_THROWS_AS(evolve(indefinite, grid, kParams.model(), kParams.bath(),
                           Scheme::redfield_raw()),
                    std::invalid_argument);

    const std::vector<double> bad_grid = {0.5, 1.0};
    CHECK_THROWS_AS(evolve(rho0, bad_grid, kParams.model(), kParams.bath(),
                           Scheme::redfield_raw()),
                    std::invalid_argument);
}

TEST_CASE("propagator starts at the identity and reproduces evolve by linearity")
{
    const auto grid = test::linspace(0.0, 3.0, 13);
    const auto phis = propagator(grid, kParams.model(), kParams.bath(), Scheme::nearest_psd());

    CHECK(phis.front().t == 0.0);
    CHECK((phis.front().phi - Matrix::Identity(9, 9)).norm() <= 1e-12);

    const Matrix rho0 = test::density_from_amplitudes(test::excited_superposition());
    const Trajectory run = evolve(rho0, grid, kParams.model(), kParams.bath(),
                                  Scheme::nearest_psd());
    for (std::size_t s = 0; s < grid.size(); ++s) {
        const Matrix mapped = unvectorize(phis[s].phi * vectorize(rho0), 3);
        CHECK((mapped - run.states[s]).norm() <= 1e-7);
    }

    // rows implementing the trace functional stay consistent with Tr Phi(X) = Tr X
    const Matrix& phi_end = phis.back().phi;
    for (int j = 0; j < 9; ++j) {
        Complex column_trace(0.0, 0.0);
        for (int k = 0; k < 3; ++k) {
            column_trace += phi_end(collective_index(k, k, 3), j);
        }
        const auto [n, m] = inverse_index(j, 3);
        CHECK(std::abs(column_trace - (n == m ? 1.0 : 0.0)) <= 1e-8);
    }
}

TEST_CASE("two-leg integration composes: Phi(t) = Lambda(t, s) Phi(s)")
{
    const auto grid = test::linspace(0.0, 1.0, 5);
    const auto phis = propagator(grid, kParams.model(), kParams.bath(), Scheme::nearest_psd(), 1e-9);

    const double s = 0.5, t = 1.0;
    const std::vector<double> leg = {s, 0.75, t};
    const auto lambda = propagator_from(leg, Matrix::Identity(9, 9), kParams.model(),
                                        kParams.bath(), Scheme::nearest_psd(), 1e-9);

    const Matrix& phi_s = phis[2].phi;  // grid[2] = 0.5
    const Matrix& phi_t = phis[4].phi;  // grid[4] = 1.0
    CHECK((lambda.back().phi * phi_s - phi_t).norm() <= 1e-6);
}

TEST_CASE("integrator reports blow-ups with the failing time")
{
    // dy/dt = y^2 escapes to infinity at t = 1; the step size underflows there
    const auto rhs = [](double, const ode::State& y, ode::State& dydt) {
        dydt = y.cwiseProduct(y);
    };
    ode::State y0(1);
    y0(0) = 1.0;
    const std::vector<double> grid = {0.0, 1.5};
    ode::Options opts;
    opts.max_steps = 100000;
    try {
        ode::integrate(rhs, y0, grid, opts, [](std::size_t, double, const ode::State&) {});
        FAIL("expected IntegrationError");
    } catch (const ode::IntegrationError& err) {
        CHECK(err.time == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("dense output tracks an analytic rotation")
{
    const Complex i(0.0, 1.0);
    const auto rhs = [&](double, const ode::State& y, ode::State& dydt) { dydt = i * y; };
    ode::State y0(1);
    y0(0) = 1.0;
    const auto grid = test::linspace(0.0, 6.0, 101); // many samples per step
    ode::Options opts;
    opts.rtol = 1e-10;
    opts.atol = 1e-12;
    ode::integrate(rhs, y0, grid, opts, [&](std::size_t, double t, const ode::State& y) {
        CHECK(std::abs(y(0) - std::exp(i * t)) <= 1e-8);
    });
}

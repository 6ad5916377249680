// ode.hpp — Embedded Dormand-Prince 5(4) integrator for complex state
// vectors, with PI step-size control and dense output on a sample grid.

#pragma once

#include <functional>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

namespace redreg::ode {

using State = Eigen::VectorXcd;
using Rhs = std::function<void(double t, const State& y, State& dydt)>;
using SampleSink = std::function<void(std::size_t index, double t, const State& y)>;

struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& what, double t)
        : std::runtime_error(what), time(t) {}
    double time;
};

struct Options {
    double rtol{1e-8};
    double atol{1e-12};
    double initial_step{0.0}; // 0 = choose automatically
    long max_steps{5'000'000};
};

// Integrate dy/dt = f(t, y) across [grid.front(), grid.back()], calling
// on_sample for every grid point (the first point reports y0). Grid points
// interior to an accepted step are filled from the order-4 dense output.
void integrate(const Rhs& f, const State& y0, std::span<const double> grid,
               const Options& opts, const SampleSink& on_sample);

} // namespace redreg::ode

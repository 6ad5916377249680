// ode.cpp — Dormand-Prince 5(4) with PI control, after Hairer's DOPRI5

#include "redreg/ode.hpp"

#include <algorithm>
#include <cmath>

namespace redreg::ode {

namespace {

// Butcher tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;

// Embedded error coefficients (order 5 minus order 4)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Dense-output coefficients
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

// Step control
constexpr double safe = 0.9, beta = 0.04;
constexpr double expo1 = 0.2 - beta * 0.75;
constexpr double fac_shrink = 0.2, fac_grow = 10.0;

double error_norm(const State& err, const State& y0, const State& y1, double atol, double rtol)
{
    double sum = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sk = atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
        const double e = std::abs(err(i)) / sk;
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(err.size()));
}

double initial_step_guess(const Rhs& f, double t0, const State& y0, const State& f0, double t_span,
                          double atol, double rtol)
{
    const auto scaled_norm = [&](const State& v) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double sk = atol + rtol * std::abs(y0(i));
            const double e = std::abs(v(i)) / sk;
            sum += e * e;
        }
        return std::sqrt(sum / static_cast<double>(v.size()));
    };

    const double d0 = scaled_norm(y0);
    const double d1n = scaled_norm(f0);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, t_span);

    State y1 = y0 + h0 * f0;
    State f1(y0.size());
    f(t0 + h0, y1, f1);
    const double d2 = scaled_norm(State(f1 - f0)) / h0;

    const double der = std::max(d1n, d2);
    double h1 = (der <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                               : std::pow(0.01 / der, 0.2);
    return std::min({100.0 * h0, h1, t_span});
}

} // namespace

void integrate(const Rhs& f, const State& y0, std::span<const double> grid,
               const Options& opts, const SampleSink& on_sample)
{
    if (grid.empty()) {
        throw std::invalid_argument("ode::integrate: empty sample grid");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("ode::integrate: sample grid must be strictly increasing");
        }
    }
    if (!(opts.rtol > 0.0) || !(opts.atol >= 0.0)) {
        throw std::invalid_argument("ode::integrate: invalid tolerances");
    }

    const double t_end = grid.back();
    double t = grid.front();
    State y = y0;

    on_sample(0, t, y);
    std::size_t next_sample = 1;
    if (next_sample >= grid.size()) {
        return;
    }

    const Eigen::Index n = y.size();
    State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), y_stage(n), y_new(n), err(n);

    f(t, y, k1);
    double h = opts.initial_step > 0.0
        ? opts.initial_step
        : initial_step_guess(f, t, y, k1, t_end - t, opts.atol, opts.rtol);

    double facold = 1e-4;
    bool last_rejected = false;

    for (long step = 0; step < opts.max_steps; ++step) {
        if (t + h > t_end) {
            h = t_end - t;
        }
        if (!(h > 0.0) || t + 0.1 * h == t) {
            throw IntegrationError("ode::integrate: step size underflow", t);
        }

        y_stage = y + h * (a21 * k1);
        f(t + c2 * h, y_stage, k2);
        y_stage = y + h * (a31 * k1 + a32 * k2);
        f(t + c3 * h, y_stage, k3);
        y_stage = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        f(t + c4 * h, y_stage, k4);
        y_stage = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(t + c5 * h, y_stage, k5);
        y_stage = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(t + h, y_stage, k6);
        y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        f(t + h, y_new, k7);

        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double err_norm = error_norm(err, y, y_new, opts.atol, opts.rtol);

        const double fac11 = std::pow(std::max(err_norm, 1e-32), expo1);
        if (err_norm <= 1.0) {
            // Dense output for sample points inside (t, t + h].
            if (next_sample < grid.size() && grid[next_sample] <= t + h + 1e-14 * std::abs(t + h)) {
                const State ydiff = y_new - y;
                const State bspl = h * k1 - ydiff;
                const State cont4 = ydiff - h * k7 - bspl;
                const State cont5 =
                    h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                while (next_sample < grid.size()
                       && grid[next_sample] <= t + h + 1e-14 * std::abs(t + h)) {
                    const double theta = std::clamp((grid[next_sample] - t) / h, 0.0, 1.0);
                    const double theta1 = 1.0 - theta;
                    const State ys = y + theta * (ydiff + theta1 * (bspl + theta * (cont4 + theta1 * cont5)));
                    on_sample(next_sample, grid[next_sample], ys);
                    ++next_sample;
                }
            }

            t += h;
            y.swap(y_new);
            k1.swap(k7); // FSAL

            if (next_sample >= grid.size() || t >= t_end) {
                return;
            }

            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(1.0 / fac_grow, std::min(1.0 / fac_shrink, fac / safe));
            double h_new = h / fac;
            if (last_rejected) {
                h_new = std::min(h_new, h);
            }
            h = h_new;
            facold = std::max(err_norm, 1e-4);
            last_rejected = false;
        } else {
            h /= std::min(1.0 / fac_shrink, fac11 / safe);
            last_rejected = true;
        }
    }

    throw IntegrationError("ode::integrate: maximum step count exceeded", t);
}

} // namespace redreg::ode

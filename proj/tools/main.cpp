// main.cpp — redreg command-line driver: simulate, choi-distance, validate,
// schemes. The CSV files are the output contract; SVG plots are optional.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "redreg/choi.hpp"
#include "redreg/linalg.hpp"
#include "redreg/ode.hpp"
#include "redreg/propagation.hpp"
#include "redreg/reference.hpp"
#include "redreg/regularizers.hpp"

#include "config.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;
using namespace redreg;
using cli::ConfigError;
using cli::RunConfig;

namespace {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;
constexpr int kExitExactUnavailable = 4;

std::string fmt(double value)
{
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.12e", value);
    return buffer;
}

std::vector<double> time_grid(const RunConfig& config)
{
    std::vector<double> grid(static_cast<std::size_t>(config.samples));
    for (int i = 0; i < config.samples; ++i) {
        grid[static_cast<std::size_t>(i)] = config.t_max * i / (config.samples - 1);
    }
    return grid;
}

// Resolved coarse-graining time for the header comment of auto runs.
std::optional<double> resolved_auto_dt(const Scheme& scheme, const RunConfig& config)
{
    if (scheme.kind != Scheme::Kind::PartialSecular || scheme.coarse_graining_dt) {
        return std::nullopt;
    }
    return auto_coarse_graining_time(*config.model, *config.bath, TimePoint::infinity(),
                                     config.psd_tol);
}

void write_trajectory_csv(const fs::path& path, const Trajectory& trajectory,
                          const std::string& comment)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string());
    }
    const int dim = static_cast<int>(trajectory.states.front().rows());
    if (!comment.empty()) {
        out << "# " << comment << "\n";
    }
    out << "t";
    for (int k = 0; k < dim; ++k) {
        for (int q = 0; q < dim; ++q) {
            out << ",re_rho_" << k << "_" << q << ",im_rho_" << k << "_" << q;
        }
    }
    out << ",trace_dev,min_eig\n";
    for (std::size_t s = 0; s < trajectory.times.size(); ++s) {
        out << fmt(trajectory.times[s]);
        for (int k = 0; k < dim; ++k) {
            for (int q = 0; q < dim; ++q) {
                out << "," << fmt(trajectory.states[s](k, q).real())
                    << "," << fmt(trajectory.states[s](k, q).imag());
            }
        }
        out << "," << fmt(trajectory.trace_deviation[s])
            << "," << fmt(trajectory.min_eigenvalue[s]) << "\n";
    }
    std::printf("wrote %s\n", path.string().c_str());
}

Trajectory exact_trajectory(const VSystemParams& params, const Eigen::Vector3cd& psi0,
                            const std::vector<double>& grid)
{
    Trajectory trajectory;
    trajectory.times = grid;
    for (double t : grid) {
        Matrix rho = exact_density(params, psi0, t);
        trajectory.trace_deviation.push_back(std::abs(rho.trace() - Complex(1.0)));
        trajectory.min_eigenvalue.push_back(linalg::min_eigenvalue(rho));
        trajectory.states.push_back(std::move(rho));
    }
    return trajectory;
}

int run_simulate(const RunConfig& config)
{
    fs::create_directories(config.output_dir);
    const std::vector<double> grid = time_grid(config);

    std::vector<std::pair<std::string, Trajectory>> runs;
    for (const Scheme& scheme : config.schemes) {
        std::string comment = "scheme = " + scheme.name();
        if (const auto dt = resolved_auto_dt(scheme, config)) {
            comment += ", resolved dt = " + fmt(*dt);
        }
        try {
            Trajectory run = evolve(config.initial_density, grid, *config.model, *config.bath,
                                    scheme, config.ode_tol);
            runs.emplace_back(scheme.name(), std::move(run));
        } catch (const ode::IntegrationError& error) {
            throw NumericalError("scheme '" + scheme.name() + "' failed at t = "
                                 + std::to_string(error.time) + ": " + error.what());
        }
        const fs::path path =
            fs::path(config.output_dir) / ("trajectory_" + cli::scheme_file_stem(scheme) + ".csv");
        write_trajectory_csv(path, runs.back().second, comment);
    }

    if (config.vsystem && config.initial_amplitudes) {
        const Trajectory exact =
            exact_trajectory(*config.vsystem, *config.initial_amplitudes, grid);
        write_trajectory_csv(fs::path(config.output_dir) / "trajectory_exact.csv", exact,
                             "exact Laplace-transform solution");
        runs.emplace_back("exact", exact);
    }

    if (config.svg) {
        std::vector<cli::Series> populations, coherences;
        for (const auto& [name, run] : runs) {
            cli::Series ground{name, run.times, {}};
            cli::Series coherence{name, run.times, {}};
            for (const Matrix& rho : run.states) {
                ground.y.push_back(rho(0, 0).real());
                coherence.y.push_back(rho(1, 2).real());
            }
            populations.push_back(std::move(ground));
            coherences.push_back(std::move(coherence));
        }
        cli::write_svg_plot((fs::path(config.output_dir) / "populations.svg").string(),
                            "ground-state population", "t", "rho_00", populations);
        cli::write_svg_plot((fs::path(config.output_dir) / "coherence.svg").string(),
                            "excited-state coherence", "t", "Re rho_12", coherences);
        std::printf("wrote %s\nwrote %s\n",
                    (fs::path(config.output_dir) / "populations.svg").string().c_str(),
                    (fs::path(config.output_dir) / "coherence.svg").string().c_str());
    }
    return 0;
}

int run_choi_distance(const RunConfig& config)
{
    if (!config.vsystem) {
        throw ConfigError("choi-distance requires the vsystem model (exact channel)");
    }
    fs::create_directories(config.output_dir);
    const std::vector<double> grid = time_grid(config);

    std::vector<PropagatorMatrix> exact;
    exact.reserve(grid.size());
    for (double t : grid) {
        exact.push_back(exact_channel(*config.vsystem, t));
    }

    struct Summary {
        std::string name;
        double avg_frobenius, avg_trace;
        double transient_frobenius, transient_trace;
    };
    std::vector<Summary> summaries;
    std::vector<cli::Series> curves;

    for (const Scheme& scheme : config.schemes) {
        std::string comment = "scheme = " + scheme.name();
        if (const auto dt = resolved_auto_dt(scheme, config)) {
            comment += ", resolved dt = " + fmt(*dt);
        }

        std::vector<PropagatorMatrix> phis;
        try {
            phis = propagator(grid, *config.model, *config.bath, scheme, config.ode_tol);
        } catch (const ode::IntegrationError& error) {
            throw NumericalError("scheme '" + scheme.name() + "' failed at t = "
                                 + std::to_string(error.time) + ": " + error.what());
        }

        const fs::path path =
            fs::path(config.output_dir) / ("delta_" + cli::scheme_file_stem(scheme) + ".csv");
        std::ofstream out(path);
        if (!out) {
            throw std::runtime_error("cannot open " + path.string());
        }
        out << "# " << comment << "\n";
        out << "t,delta_frobenius,delta_trace\n";

        Summary summary{scheme.name(), 0.0, 0.0, 0.0, 0.0};
        int transient_count = 0;
        cli::Series curve{scheme.name(), grid, {}};
        for (std::size_t s = 0; s < grid.size(); ++s) {
            const double d_f = delta(phis[s], exact[s], ChoiNorm::Frobenius);
            const double d_t = delta(phis[s], exact[s], ChoiNorm::Trace);
            out << fmt(grid[s]) << "," << fmt(d_f) << "," << fmt(d_t) << "\n";
            summary.avg_frobenius += d_f;
            summary.avg_trace += d_t;
            if (grid[s] <= config.transient_window) {
                summary.transient_frobenius += d_f;
                summary.transient_trace += d_t;
                ++transient_count;
            }
            curve.y.push_back(config.norm == ChoiNorm::Frobenius ? d_f : d_t);
        }
        summary.avg_frobenius /= static_cast<double>(grid.size());
        summary.avg_trace /= static_cast<double>(grid.size());
        if (transient_count > 0) {
            summary.transient_frobenius /= transient_count;
            summary.transient_trace /= transient_count;
        }
        summaries.push_back(summary);
        curves.push_back(std::move(curve));
        std::printf("wrote %s\n", path.string().c_str());
    }

    const fs::path summary_path = fs::path(config.output_dir) / "delta_summary.csv";
    {
        std::ofstream out(summary_path);
        out << "# transient window = [0, " << fmt(config.transient_window) << "]\n";
        out << "scheme,avg_delta_frobenius,avg_delta_trace,"
            << "transient_avg_delta_frobenius,transient_avg_delta_trace\n";
        for (const auto& s : summaries) {
            out << s.name << "," << fmt(s.avg_frobenius) << "," << fmt(s.avg_trace) << ","
                << fmt(s.transient_frobenius) << "," << fmt(s.transient_trace) << "\n";
        }
    }
    std::printf("wrote %s\n", summary_path.string().c_str());

    std::vector<std::size_t> order(summaries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double lhs = config.norm == ChoiNorm::Frobenius ? summaries[a].transient_frobenius
                                                              : summaries[a].transient_trace;
        const double rhs = config.norm == ChoiNorm::Frobenius ? summaries[b].transient_frobenius
                                                              : summaries[b].transient_trace;
        return lhs < rhs;
    });
    std::printf("transient ranking (best first):");
    for (std::size_t i : order) {
        std::printf(" %s", summaries[i].name.c_str());
    }
    std::printf("\n");

    if (config.svg) {
        const fs::path svg_path = fs::path(config.output_dir) / "delta.svg";
        cli::write_svg_plot(svg_path.string(), "distance from the exact dynamics", "t",
                            config.norm == ChoiNorm::Frobenius ? "delta (Frobenius)"
                                                               : "delta (trace)",
                            curves);
        std::printf("wrote %s\n", svg_path.string().c_str());
    }
    return 0;
}

// --- validate --------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

CheckResult check_qubit_oracle(double tol)
{
    const BathSpec bath = BathSpec::lorentzian(Eigen::MatrixXd::Identity(1, 1), 4.0, 1.0);
    double worst = 0.0;
    for (const TimePoint t : {TimePoint::at(0.6), TimePoint::infinity()}) {
        const KossakowskiData generic = kossakowski(qubit_model(1.3), bath, t);
        const KossakowskiData oracle = qubit_kossakowski(1.3, bath, t);
        worst = std::max(worst, (generic.chi - oracle.chi).norm());
        worst = std::max(worst, (generic.lamb_shift - oracle.lamb_shift).norm());
    }
    return {"qubit-kossakowski-oracle", worst <= tol, "max residual " + fmt(worst)};
}

CheckResult check_oscillator_oracle(double tol)
{
    const BathSpec bath = BathSpec::lorentzian(Eigen::MatrixXd::Identity(1, 1), 4.0, 1.0);
    double worst = 0.0;
    for (const TimePoint t : {TimePoint::at(0.6), TimePoint::infinity()}) {
        const KossakowskiData generic = kossakowski(truncated_oscillator_model(1.7, 3), bath, t);
        const KossakowskiData oracle = oscillator_kossakowski(1.7, bath, t, 3);
        worst = std::max(worst, (generic.chi - oracle.chi).norm());
        worst = std::max(worst, (generic.lamb_shift - oracle.lamb_shift).norm());
    }
    return {"oscillator-kossakowski-oracle", worst <= tol, "max residual " + fmt(worst)};
}

CheckResult check_bochner(double tol)
{
    const BathSpec bath = BathSpec::lorentzian_rank_one(1.0, 0.7, 4.0, 1.5);
    double worst = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double omega = -10.0 + 0.5 * i;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(bath.spectral_density(omega));
        worst = std::min(worst, solver.eigenvalues().minCoeff());
    }
    return {"bochner-spectral-density-psd", worst >= -tol, "min eigenvalue " + fmt(worst)};
}

CheckResult check_dual_rhs(double tol)
{
    const VSystemParams params{1.0, 2.0, 1.0, 1.0, 4.0, 1.5};
    std::mt19937_64 gen(12345);
    std::normal_distribution<double> normal(0.0, 1.0);
    double worst = 0.0;
    for (double t : {0.1, 1.0, 10.0}) {
        Matrix rho(3, 3);
        for (int k = 0; k < 3; ++k) {
            for (int q = 0; q < 3; ++q) {
                rho(k, q) = Complex(normal(gen), normal(gen));
            }
        }
        rho = Matrix(0.5 * (rho + rho.adjoint()));
        const Matrix component = vsystem_rhs(rho, t, params);
        const Matrix generic = lgks_rhs(rho, t, params.model(), params.bath(),
                                        Scheme::redfield_raw());
        worst = std::max(worst, (component - generic).norm());
    }
    return {"dual-rhs-vsystem", worst <= tol, "max residual " + fmt(worst)};
}

CheckResult check_single_channel(double tol)
{
    std::mt19937_64 gen(777);
    std::normal_distribution<double> normal(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int size = 2 + static_cast<int>(gen() % 8);
        Vector A(size), G(size);
        for (int i = 0; i < size; ++i) {
            A(i) = Complex(normal(gen), normal(gen));
            G(i) = Complex(normal(gen), normal(gen));
        }
        const SingleChannelSpectrum s = single_channel_spectrum(A, G);
        const double norm_a2 = A.squaredNorm();
        worst = std::max(worst, std::abs(s.lambda_plus - norm_a2 * (s.mean_J + s.v_gamma)));
        worst = std::max(worst, std::abs(s.lambda_minus - norm_a2 * (s.mean_J - s.v_gamma)));
    }
    return {"single-channel-spectrum-forms", worst <= tol, "max residual " + fmt(worst)};
}

CheckResult check_exact_vs_ode(double tol)
{
    const VSystemParams params{1.0, 2.0, 1.0, 1.0, 4.0, 1.5};
    const Complex M(params.mu, params.omega0);
    const double g11 = 0.5 * params.gamma1 * params.mu;
    const double g22 = 0.5 * params.gamma2 * params.mu;
    const double g12 = 0.5 * std::sqrt(params.gamma1 * params.gamma2) * params.mu;
    const Complex i(0.0, 1.0);
    const auto rhs = [&](double, const ode::State& y, ode::State& dydt) {
        dydt(0) = -i * params.omega1 * y(0) - (g11 * y(2) + g12 * y(3));
        dydt(1) = -i * params.omega2 * y(1) - (g12 * y(2) + g22 * y(3));
        dydt(2) = -M * y(2) + y(0);
        dydt(3) = -M * y(3) + y(1);
    };
    ode::State y0(4);
    y0 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0, 0.0;
    std::vector<double> grid(51);
    for (int s = 0; s < 51; ++s) grid[static_cast<std::size_t>(s)] = 10.0 * s / 50.0;

    ode::Options opts;
    opts.rtol = 1e-12;
    opts.atol = 1e-14;
    const ExactAmplitudeSolution solution = solve_exact(params);
    Eigen::Vector2cd a0;
    a0 << y0(0), y0(1);
    double worst = 0.0;
    ode::integrate(rhs, y0, grid, opts, [&](std::size_t, double t, const ode::State& y) {
        const Eigen::Vector2cd closed = solution.transfer(t) * a0;
        worst = std::max({worst, std::abs(closed(0) - y(0)), std::abs(closed(1) - y(1))});
    });
    return {"exact-amplitudes-vs-ode", worst <= tol, "max residual " + fmt(worst)};
}

CheckResult check_projection(double tol)
{
    std::mt19937_64 gen(2024);
    std::normal_distribution<double> normal(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 2 + static_cast<int>(gen() % 7);
        Matrix X(dim, dim);
        for (int a = 0; a < dim; ++a) {
            for (int b = 0; b < dim; ++b) {
                X(a, b) = Complex(normal(gen), normal(gen));
            }
        }
        X = Matrix(0.5 * (X + X.adjoint()));
        const Matrix P = linalg::nearest_psd(X);
        double negative_sq = 0.0;
        const linalg::HermitianEig eig = linalg::hermitian_eig(X);
        for (int k = 0; k < dim; ++k) {
            if (eig.eigenvalues(k) < 0.0) negative_sq += eig.eigenvalues(k) * eig.eigenvalues(k);
        }
        worst = std::max(worst, std::abs((X - P).norm() - std::sqrt(negative_sq)));
    }
    return {"nearest-psd-projection", worst <= tol, "max residual " + fmt(worst)};
}

int run_validate(bool corrupt_tolerance)
{
    // test hook: shrinking every tolerance far below machine precision must
    // flip the report to failure
    const double scale = corrupt_tolerance ? 1e-12 : 1.0;
    const std::vector<CheckResult> results = {
        check_qubit_oracle(1e-12 * scale),
        check_oscillator_oracle(1e-12 * scale),
        check_bochner(1e-12 * scale),
        check_dual_rhs(1e-10 * scale),
        check_single_channel(1e-10 * scale),
        check_exact_vs_ode(1e-6 * scale),
        check_projection(1e-12 * scale),
    };

    int failures = 0;
    std::printf("%-34s %-6s %s\n", "check", "status", "detail");
    for (const CheckResult& result : results) {
        if (!result.passed) ++failures;
        std::printf("%-34s %-6s %s\n", result.name.c_str(),
                    result.passed ? "PASS" : "FAIL", result.detail.c_str());
    }
    if (failures > 0) {
        std::printf("%d check(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu checks passed\n", results.size());
    return 0;
}

int run_schemes()
{
    std::printf("redfield-raw                    raw Redfield generator chi(t); indefinite in general\n");
    std::printf("nearest-psd                     closest-PSD replacement of chi(t); keeps time dependence\n");
    std::printf("partial-secular[:auto|:dt=<x>]  sinc damping of chi; auto finds the smallest PSD dt\n");
    std::printf("secular                         keep resonant entries only (second Markov limit)\n");
    std::printf("ule                             geometric mean of spectral densities (second Markov limit)\n");
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"redreg: Redfield-equation regularization laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override, norm_override;
    double tol_override = 0.0;
    std::vector<std::string> scheme_overrides;
    bool svg_override = false;
    bool corrupt_tolerance = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "path to the JSON config document")->required();
        cmd->add_option("--out", out_override, "output directory (overrides config)");
        cmd->add_option("--norm", norm_override, "frobenius|trace (overrides config)")
            ->check(CLI::IsMember({"frobenius", "trace"}));
        cmd->add_option("--tol", tol_override, "ODE relative tolerance (overrides config)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--scheme", scheme_overrides,
                        "scheme name, repeatable (overrides the config list)");
        cmd->add_flag("--svg", svg_override, "also write SVG plots");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "integrate rho(t) per scheme, write CSVs");
    add_common(simulate);
    CLI::App* choi_distance = app.add_subcommand(
        "choi-distance", "delta(t) Choi distances against the exact channel, write CSVs");
    add_common(choi_distance);
    CLI::App* validate = app.add_subcommand("validate", "run the built-in consistency checks");
    validate->add_flag("--corrupt-tolerance", corrupt_tolerance)->group(""); // test hook
    CLI::App* schemes = app.add_subcommand("schemes", "list the available schemes");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(validate)) {
            return run_validate(corrupt_tolerance);
        }
        if (app.got_subcommand(schemes)) {
            return run_schemes();
        }

        RunConfig config = cli::load_config(config_path);
        if (!out_override.empty()) config.output_dir = out_override;
        if (!norm_override.empty()) config.norm = parse_choi_norm(norm_override);
        if (tol_override > 0.0) config.ode_tol = tol_override;
        if (!scheme_overrides.empty()) {
            config.schemes.clear();
            for (const std::string& name : scheme_overrides) {
                config.schemes.push_back(Scheme::parse(name));
            }
        }
        config.svg = config.svg || svg_override;

        if (app.got_subcommand(simulate)) {
            return run_simulate(config);
        }
        return run_choi_distance(config);
    } catch (const ConfigError& error) {
        std::fprintf(stderr, "config error: %s\n", error.what());
        return kExitConfigError;
    } catch (const std::invalid_argument& error) {
        std::fprintf(stderr, "config error: %s\n", error.what());
        return kExitConfigError;
    } catch (const DegenerateRootsError& error) {
        std::fprintf(stderr, "exact channel unavailable: %s\n", error.what());
        return kExitExactUnavailable;
    } catch (const NumericalError& error) {
        std::fprintf(stderr, "numerical failure: %s\n", error.what());
        return kExitNumericalError;
    } catch (const std::exception& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return kExitNumericalError;
    }
}

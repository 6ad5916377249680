// module.cpp — pybind11 bindings for the main operations: model/bath setup,
// Kossakowski assembly and regularization, propagation, Choi distances, and
// the exact three-level reference solution.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "redreg/choi.hpp"
#include "redreg/linalg.hpp"
#include "redreg/propagation.hpp"
#include "redreg/reference.hpp"
#include "redreg/regularizers.hpp"

namespace py = pybind11;
using namespace redreg;

namespace {

// Python passes plain floats; math.inf selects the second-Markov limit.
TimePoint time_from(double t)
{
    return std::isinf(t) ? TimePoint::infinity() : TimePoint::at(t);
}

double time_to(TimePoint t)
{
    return t.is_infinite() ? std::numeric_limits<double>::infinity() : t.value();
}

py::array_t<Complex> stack_matrices(const std::vector<Matrix>& frames)
{
    const auto count = static_cast<py::ssize_t>(frames.size());
    const auto rows = static_cast<py::ssize_t>(frames.empty() ? 0 : frames.front().rows());
    const auto cols = static_cast<py::ssize_t>(frames.empty() ? 0 : frames.front().cols());
    py::array_t<Complex> out({count, rows, cols});
    auto view = out.mutable_unchecked<3>();
    for (py::ssize_t f = 0; f < count; ++f) {
        for (py::ssize_t r = 0; r < rows; ++r) {
            for (py::ssize_t c = 0; c < cols; ++c) {
                view(f, r, c) = frames[static_cast<std::size_t>(f)](r, c);
            }
        }
    }
    return out;
}

py::dict trajectory_dict(const Trajectory& trajectory)
{
    py::dict out;
    out["times"] = py::array_t<double>(static_cast<py::ssize_t>(trajectory.times.size()),
                                       trajectory.times.data());
    out["states"] = stack_matrices(trajectory.states);
    out["trace_deviation"] =
        py::array_t<double>(static_cast<py::ssize_t>(trajectory.trace_deviation.size()),
                            trajectory.trace_deviation.data());
    out["min_eigenvalue"] =
        py::array_t<double>(static_cast<py::ssize_t>(trajectory.min_eigenvalue.size()),
                            trajectory.min_eigenvalue.data());
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Redfield-equation regularization laboratory (C++ core)";

    py::register_exception<DegenerateRootsError>(m, "DegenerateRootsError");

    // linear algebra kernels
    m.def("hermitian_eig", [](const Matrix& H) {
        const linalg::HermitianEig eig = linalg::hermitian_eig(H);
        return py::make_tuple(eig.eigenvalues, eig.eigenvectors);
    }, py::arg("H"), "Ascending eigenvalues and phase-fixed eigenvectors of a Hermitian matrix");
    m.def("nearest_psd", &linalg::nearest_psd, py::arg("X"),
          "Frobenius projection onto the PSD cone");
    m.def("psd_sqrt", &linalg::psd_sqrt, py::arg("P"));
    m.def("frobenius_norm", &linalg::frobenius_norm, py::arg("X"));
    m.def("trace_norm", &linalg::trace_norm, py::arg("X"));
    m.def("min_eigenvalue", &linalg::min_eigenvalue, py::arg("H"));

    py::class_<SystemModel>(m, "SystemModel")
        .def(py::init<Eigen::VectorXd, std::vector<Matrix>>(),
             py::arg("energies"), py::arg("couplings"))
        .def_property_readonly("dimension", &SystemModel::dimension)
        .def_property_readonly("channel_count", &SystemModel::channel_count)
        .def_property_readonly("energies", &SystemModel::energies)
        .def_property_readonly("couplings", &SystemModel::couplings)
        .def("bohr_frequency", &SystemModel::bohr_frequency, py::arg("k"), py::arg("q"))
        .def("hamiltonian", &SystemModel::hamiltonian);

    m.def("vsystem_model", &vsystem_model, py::arg("omega1"), py::arg("omega2"));
    m.def("qubit_model", &qubit_model, py::arg("omega1"));
    m.def("truncated_oscillator_model", &truncated_oscillator_model,
          py::arg("omega_s"), py::arg("fock_levels"));

    py::class_<BathSpec>(m, "BathSpec")
        .def_static("lorentzian", &BathSpec::lorentzian,
                    py::arg("gamma"), py::arg("mu"), py::arg("omega0"))
        .def_static("lorentzian_rank_one", &BathSpec::lorentzian_rank_one,
                    py::arg("gamma1"), py::arg("gamma2"), py::arg("mu"), py::arg("omega0"))
        .def_static("tabulated", &BathSpec::tabulated, py::arg("tau_grid"), py::arg("samples"))
        .def_property_readonly("channel_count", &BathSpec::channel_count)
        .def("correlation", &BathSpec::correlation,
             py::arg("alpha"), py::arg("beta"), py::arg("tau"))
        .def("gamma_half_fourier",
             [](const BathSpec& bath, int alpha, int beta, double omega, double t) {
                 return bath.gamma_half_fourier(alpha, beta, omega, time_from(t)).value;
             },
             py::arg("alpha"), py::arg("beta"), py::arg("omega"), py::arg("t"),
             "Gamma(omega, t); pass math.inf for the second-Markov limit")
        .def("spectral_density", &BathSpec::spectral_density, py::arg("omega"));

    py::class_<KossakowskiData>(m, "KossakowskiData")
        .def_property_readonly("t", [](const KossakowskiData& d) { return time_to(d.t); })
        .def_readonly("chi", &KossakowskiData::chi)
        .def_readonly("eta", &KossakowskiData::eta)
        .def_readonly("lamb_shift", &KossakowskiData::lamb_shift);

    m.def("kossakowski",
          [](const SystemModel& model, const BathSpec& bath, double t) {
              return kossakowski(model, bath, time_from(t));
          },
          py::arg("model"), py::arg("bath"), py::arg("t"));

    m.def("apply_scheme",
          [](const std::string& scheme, const SystemModel& model, const BathSpec& bath, double t,
             double psd_tol) {
              return apply(Scheme::parse(scheme), model, bath, time_from(t), psd_tol);
          },
          py::arg("scheme"), py::arg("model"), py::arg("bath"), py::arg("t"),
          py::arg("psd_tol") = 1e-10);

    m.def("auto_coarse_graining_time",
          [](const SystemModel& model, const BathSpec& bath, double t, double psd_tol) {
              return auto_coarse_graining_time(model, bath, time_from(t), psd_tol);
          },
          py::arg("model"), py::arg("bath"), py::arg("t"), py::arg("psd_tol") = 1e-10);

    m.def("scheme_names", [] {
        return std::vector<std::string>{"redfield-raw", "nearest-psd", "partial-secular:auto",
                                        "secular", "ule"};
    });

    m.def("evolve",
          [](const Matrix& rho0, const std::vector<double>& t_grid, const SystemModel& model,
             const BathSpec& bath, const std::string& scheme, double tol) {
              return trajectory_dict(
                  evolve(rho0, t_grid, model, bath, Scheme::parse(scheme), tol));
          },
          py::arg("rho0"), py::arg("t_grid"), py::arg("model"), py::arg("bath"),
          py::arg("scheme"), py::arg("tol") = 1e-8,
          "Integrate the master equation; returns a dict of numpy arrays");

    m.def("propagator",
          [](const std::vector<double>& t_grid, const SystemModel& model, const BathSpec& bath,
             const std::string& scheme, double tol) {
              const auto phis = propagator(t_grid, model, bath, Scheme::parse(scheme), tol);
              std::vector<Matrix> frames;
              frames.reserve(phis.size());
              for (const auto& phi : phis) {
                  frames.push_back(phi.phi);
              }
              return stack_matrices(frames);
          },
          py::arg("t_grid"), py::arg("model"), py::arg("bath"), py::arg("scheme"),
          py::arg("tol") = 1e-8);

    m.def("choi", [](const Matrix& phi) { return choi(PropagatorMatrix{0.0, phi}).J; },
          py::arg("phi"), "Choi operator of a propagator matrix");
    m.def("cp_check",
          [](const Matrix& J, double tol) {
              const CpCheck result = cp_check(ChoiOperator{0.0, J}, tol);
              return py::make_tuple(result.is_cp, result.min_eig);
          },
          py::arg("J"), py::arg("tol") = 1e-10);
    m.def("choi_distance",
          [](const Matrix& phi_a, const Matrix& phi_b, const std::string& norm) {
              return delta(PropagatorMatrix{0.0, phi_a}, PropagatorMatrix{0.0, phi_b},
                           parse_choi_norm(norm));
          },
          py::arg("phi_a"), py::arg("phi_b"), py::arg("norm") = "frobenius");

    py::class_<VSystemParams>(m, "VSystemParams")
        .def(py::init([](double omega1, double omega2, double gamma1, double gamma2, double mu,
                         double omega0) {
                 return VSystemParams{omega1, omega2, gamma1, gamma2, mu, omega0};
             }),
             py::arg("omega1"), py::arg("omega2"), py::arg("gamma1"), py::arg("gamma2"),
             py::arg("mu"), py::arg("omega0"))
        .def_readwrite("omega1", &VSystemParams::omega1)
        .def_readwrite("omega2", &VSystemParams::omega2)
        .def_readwrite("gamma1", &VSystemParams::gamma1)
        .def_readwrite("gamma2", &VSystemParams::gamma2)
        .def_readwrite("mu", &VSystemParams::mu)
        .def_readwrite("omega0", &VSystemParams::omega0)
        .def("model", &VSystemParams::model)
        .def("bath", &VSystemParams::bath);

    m.def("cubic_roots", [](const VSystemParams& params) {
        const auto roots = cubic_roots(params);
        return std::vector<Complex>(roots.begin(), roots.end());
    }, py::arg("params"));
    m.def("exact_amplitudes", &exact_amplitudes, py::arg("params"), py::arg("a0"), py::arg("t"));
    m.def("exact_density", &exact_density, py::arg("params"), py::arg("psi0"), py::arg("t"));
    m.def("exact_channel",
          [](const VSystemParams& params, double t) { return exact_channel(params, t).phi; },
          py::arg("params"), py::arg("t"));

    m.def("qubit_kossakowski",
          [](double omega1, const BathSpec& bath, double t) {
              return qubit_kossakowski(omega1, bath, time_from(t));
          },
          py::arg("omega1"), py::arg("bath"), py::arg("t"));
    m.def("oscillator_kossakowski",
          [](double omega_s, const BathSpec& bath, double t, int fock_levels) {
              return oscillator_kossakowski(omega_s, bath, time_from(t), fock_levels);
          },
          py::arg("omega_s"), py::arg("bath"), py::arg("t"), py::arg("fock_levels"));
}

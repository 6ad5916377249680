// config.cpp — JSON config loading and validation

#include "config.hpp"

#include <fstream>

#include <json.hpp>

#include "redreg/linalg.hpp"

namespace redreg::cli {

namespace {

using nlohmann::json;

Complex parse_complex(const json& node, const char* where)
{
    if (node.is_number()) {
        return Complex(node.get<double>(), 0.0);
    }
    if (node.is_array() && node.size() == 2 && node[0].is_number() && node[1].is_number()) {
        return Complex(node[0].get<double>(), node[1].get<double>());
    }
    throw ConfigError(std::string(where) + ": complex entries must be numbers or [re, im] pairs");
}

Matrix parse_complex_matrix(const json& node, const char* where)
{
    if (!node.is_array() || node.empty()) {
        throw ConfigError(std::string(where) + ": expected a nonempty array of rows");
    }
    const std::size_t rows = node.size();
    const std::size_t cols = node[0].size();
    Matrix X(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!node[i].is_array() || node[i].size() != cols) {
            throw ConfigError(std::string(where) + ": ragged matrix rows");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                parse_complex(node[i][j], where);
        }
    }
    return X;
}

double require_number(const json& node, const char* key, const char* where)
{
    if (!node.contains(key) || !node[key].is_number()) {
        throw ConfigError(std::string(where) + ": missing numeric field '" + key + "'");
    }
    return node[key].get<double>();
}

void parse_model_and_bath(const json& root, RunConfig& config)
{
    if (!root.contains("model") || !root.contains("bath")) {
        throw ConfigError("config: 'model' and 'bath' sections are required");
    }
    const json& model_node = root["model"];
    const json& bath_node = root["bath"];
    const std::string model_type = model_node.value("type", "");
    const std::string bath_type = bath_node.value("type", "");

    if (model_type == "vsystem") {
        if (bath_type != "lorentzian") {
            throw ConfigError("config: the vsystem model needs a lorentzian bath");
        }
        VSystemParams params{};
        params.omega1 = require_number(model_node, "omega1", "model");
        params.omega2 = require_number(model_node, "omega2", "model");
        params.gamma1 = require_number(bath_node, "gamma1", "bath");
        params.gamma2 = require_number(bath_node, "gamma2", "bath");
        params.mu = require_number(bath_node, "mu", "bath");
        params.omega0 = require_number(bath_node, "omega0", "bath");
        config.vsystem = params;
        config.model = params.model();
        config.bath = params.bath();
        return;
    }

    if (model_type != "generic") {
        throw ConfigError("config: model.type must be 'vsystem' or 'generic'");
    }
    if (!model_node.contains("energies") || !model_node["energies"].is_array()) {
        throw ConfigError("config: generic model needs an 'energies' array");
    }
    Eigen::VectorXd energies(model_node["energies"].size());
    for (std::size_t k = 0; k < model_node["energies"].size(); ++k) {
        energies(static_cast<Eigen::Index>(k)) = model_node["energies"][k].get<double>();
    }
    if (!model_node.contains("couplings") || !model_node["couplings"].is_array()
        || model_node["couplings"].empty()) {
        throw ConfigError("config: generic model needs a 'couplings' array");
    }
    std::vector<Matrix> couplings;
    for (const json& op : model_node["couplings"]) {
        couplings.push_back(parse_complex_matrix(op, "model.couplings"));
    }
    config.model = SystemModel(std::move(energies), std::move(couplings));

    if (bath_type == "lorentzian") {
        if (bath_node.contains("gamma")) {
            const Matrix gamma_c = parse_complex_matrix(bath_node["gamma"], "bath.gamma");
            if (gamma_c.imag().norm() != 0.0) {
                throw ConfigError("bath.gamma: rate matrix must be real");
            }
            config.bath = BathSpec::lorentzian(gamma_c.real(),
                                               require_number(bath_node, "mu", "bath"),
                                               require_number(bath_node, "omega0", "bath"));
        } else {
            config.bath = BathSpec::lorentzian_rank_one(
                require_number(bath_node, "gamma1", "bath"),
                require_number(bath_node, "gamma2", "bath"),
                require_number(bath_node, "mu", "bath"),
                require_number(bath_node, "omega0", "bath"));
        }
    } else if (bath_type == "tabulated") {
        if (!bath_node.contains("tau") || !bath_node.contains("samples")) {
            throw ConfigError("config: tabulated bath needs 'tau' and 'samples'");
        }
        std::vector<double> tau;
        for (const json& v : bath_node["tau"]) {
            tau.push_back(v.get<double>());
        }
        std::vector<Matrix> samples;
        for (const json& m : bath_node["samples"]) {
            samples.push_back(parse_complex_matrix(m, "bath.samples"));
        }
        config.bath = BathSpec::tabulated(std::move(tau), std::move(samples));
    } else {
        throw ConfigError("config: bath.type must be 'lorentzian' or 'tabulated'");
    }
}

void parse_initial_state(const json& root, RunConfig& config)
{
    const int dim = config.model->dimension();
    if (!root.contains("initial_state")) {
        throw ConfigError("config: 'initial_state' section is required");
    }
    const json& node = root["initial_state"];

    if (node.contains("amplitudes")) {
        const json& amps = node["amplitudes"];
        if (!amps.is_array() || static_cast<int>(amps.size()) != dim) {
            throw ConfigError("initial_state.amplitudes: need one entry per level");
        }
        Vector psi(dim);
        for (int k = 0; k < dim; ++k) {
            psi(k) = parse_complex(amps[static_cast<std::size_t>(k)], "initial_state.amplitudes");
        }
        if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) {
            throw ConfigError("initial_state.amplitudes: state is not normalized");
        }
        config.initial_density = psi * psi.adjoint();
        if (dim == 3 && config.vsystem) {
            config.initial_amplitudes = Eigen::Vector3cd(psi(0), psi(1), psi(2));
        }
        return;
    }
    if (node.contains("density")) {
        config.initial_density = parse_complex_matrix(node["density"], "initial_state.density");
        if (config.initial_density.rows() != dim || config.initial_density.cols() != dim) {
            throw ConfigError("initial_state.density: dimension mismatch with the model");
        }
        if (std::abs(config.initial_density.trace() - Complex(1.0)) > 1e-10) {
            throw ConfigError("initial_state.density: trace must be 1");
        }
        return;
    }
    throw ConfigError("initial_state: provide 'amplitudes' or 'density'");
}

} // namespace

RunConfig load_config(const std::string& path)
{
    std::ifstream stream(path);
    if (!stream) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    json root;
    try {
        root = json::parse(stream);
    } catch (const json::parse_error& error) {
        throw ConfigError(std::string("config: JSON parse error: ") + error.what());
    }

    RunConfig config;
    try {
        parse_model_and_bath(root, config);
        parse_initial_state(root, config);

        if (root.contains("schemes")) {
            for (const json& name : root["schemes"]) {
                config.schemes.push_back(Scheme::parse(name.get<std::string>()));
            }
        } else {
            for (const char* name : {"redfield-raw", "nearest-psd", "partial-secular:auto",
                                     "secular", "ule"}) {
                config.schemes.push_back(Scheme::parse(name));
            }
        }

        if (root.contains("time")) {
            config.t_max = require_number(root["time"], "t_max", "time");
            config.samples = static_cast<int>(require_number(root["time"], "samples", "time"));
        }
        if (root.contains("tolerances")) {
            const json& tol = root["tolerances"];
            if (tol.contains("ode")) config.ode_tol = tol["ode"].get<double>();
            if (tol.contains("psd")) config.psd_tol = tol["psd"].get<double>();
        }
        if (root.contains("norm")) {
            config.norm = parse_choi_norm(root["norm"].get<std::string>());
        }
        if (root.contains("transient_window")) {
            config.transient_window = root["transient_window"].get<double>();
        }
        if (root.contains("output_dir")) {
            config.output_dir = root["output_dir"].get<std::string>();
        }
        if (root.contains("svg")) {
            config.svg = root["svg"].get<bool>();
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& error) {
        throw ConfigError(std::string("config: ") + error.what());
    }

    if (!(config.t_max > 0.0)) {
        throw ConfigError("config: time.t_max must be > 0");
    }
    if (config.samples < 2) {
        throw ConfigError("config: time.samples must be >= 2");
    }
    if (!(config.ode_tol > 0.0) || config.psd_tol < 0.0) {
        throw ConfigError("config: invalid tolerances");
    }
    if (!(config.transient_window > 0.0)) {
        throw ConfigError("config: transient_window must be > 0");
    }
    return config;
}

std::string scheme_file_stem(const Scheme& scheme)
{
    std::string stem = scheme.name();
    for (char& c : stem) {
        if (c == ':' || c == '=' || c == '.') {
            c = '-';
        }
    }
    return stem;
}

} // namespace redreg::cli

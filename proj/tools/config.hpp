// config.hpp — Run configuration: a single JSON document describing the
// model, bath, schemes, initial state, time grid, and output options.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "redreg/choi.hpp"
#include "redreg/reference.hpp"
#include "redreg/regularizers.hpp"

namespace redreg::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<VSystemParams> vsystem; // exact reference available iff set
    std::optional<SystemModel> model;
    std::optional<BathSpec> bath;

    Matrix initial_density;
    std::optional<Eigen::Vector3cd> initial_amplitudes;

    std::vector<Scheme> schemes;
    double t_max{10.0};
    int samples{201};
    double ode_tol{1e-8};
    double psd_tol{1e-10};
    ChoiNorm norm{ChoiNorm::Frobenius};
    double transient_window{0.5};
    std::string output_dir{"out"};
    bool svg{false};
};

// Parse and validate the JSON config document; throws ConfigError.
RunConfig load_config(const std::string& path);

// Filesystem-safe file stem for a scheme name.
std::string scheme_file_stem(const Scheme& scheme);

} // namespace redreg::cli

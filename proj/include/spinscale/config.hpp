#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinscale/interactions.hpp"
#include "spinscale/point_process.hpp"

namespace spinscale {

struct ConfigError : std::runtime_error {
    std::vector<std::string> problems;
    explicit ConfigError(std::vector<std::string> problems_);
};

struct InteractionSpec {
    InteractionKind kind = InteractionKind::clipped_linear;
    double r = 1.5;
    double J = 0.0;

    InteractionFamily family() const { return {kind, r, J}; }
};

struct ExperimentConfig {
    // configuration block
    int dim = 1;
    double box_halfwidth = 50.0;
    double intensity = 1.0;
    ConfigKind kind = ConfigKind::poisson;
    double hc_radius = 0.0;  // only for kind == hardcore
    std::uint64_t seed = 42;

    // interaction blocks
    InteractionSpec drift;
    InteractionSpec diffusion;

    // scale block
    double alpha_star = 0.5;
    double alpha_sup = 2.0;
    int grid_points = 6;

    // dynamics block
    double T = 1.0;
    int n_steps = 64;
    int replicas = 256;
    double p = 2.0;
    double q = 4.0;
    double u0_constant = 1.0;
    std::vector<double> u0_values;  // per-site override; empty means constant

    // run block
    std::string suite = "full";
    double tol = 1e-6;
    std::string out_dir;

    std::string to_json() const;
};

// Parses and validates; reports every violation, not just the first.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0;
    double bound = 0;
    std::string note;
};

struct RunArtifact {
    std::string manifest;                        // JSON, timestamps included
    std::map<std::string, std::string> tables;   // CSV bodies by file name
    std::vector<CheckResult> checks;
    bool all_pass = true;
};

// Executes the selected suite(s) and, when out_dir is set, writes the
// manifest and tables there. Deterministic given the config.
RunArtifact run_experiment(const ExperimentConfig& config);

}  // namespace spinscale

#include "spinscale/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace spinscale {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out = "invalid experiment config:";
    for (const auto& p : parts) out += "\n  - " + p;
    return out;
}

const std::vector<std::string> kSuites = {"sample",    "simulate",     "picard", "estimates",
                                          "estimates-only", "operator-fit", "full"};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems_)
    : std::runtime_error(join(problems_)), problems(std::move(problems_)) {}

std::string ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["configuration"] = {{"dim", dim},
                          {"box_halfwidth", box_halfwidth},
                          {"intensity", intensity},
                          {"kind", to_string(kind)},
                          {"seed", seed}};
    if (kind == ConfigKind::hardcore) j["configuration"]["hc_radius"] = hc_radius;
    j["drift"] = {{"kind", to_string(drift.kind)}, {"r", drift.r}, {"J", drift.J}};
    j["diffusion"] = {{"kind", to_string(diffusion.kind)}, {"r", diffusion.r}, {"J", diffusion.J}};
    j["scale"] = {{"alpha_star", alpha_star}, {"alpha_sup", alpha_sup}, {"grid_points", grid_points}};
    j["dynamics"] = {{"T", T}, {"n_steps", n_steps}, {"M", replicas}, {"p", p}, {"q", q}};
    if (u0_values.empty())
        j["dynamics"]["u0"] = {{"constant", u0_constant}};
    else
        j["dynamics"]["u0"] = {{"values", u0_values}};
    j["run"] = {{"suite", suite}, {"tol", tol}, {"out_dir", out_dir}};
    return j.dump(2);
}

ExperimentConfig parse_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError({std::string("JSON parse error: ") + e.what()});
    }

    ExperimentConfig cfg;
    std::vector<std::string> problems;
    auto get = [&](const nlohmann::json& block, const char* block_name, const char* key,
                   auto& target) {
        if (!block.contains(key)) return;
        try {
            target = block.at(key).get<std::remove_reference_t<decltype(target)>>();
        } catch (const nlohmann::json::exception& e) {
            problems.push_back(std::string(block_name) + "." + key + ": " + e.what());
        }
    };

    std::string kind_name = "poisson", drift_kind = "clipped_linear",
                diff_kind = "clipped_linear";
    if (j.contains("configuration")) {
        const auto& b = j["configuration"];
        get(b, "configuration", "dim", cfg.dim);
        get(b, "configuration", "box_halfwidth", cfg.box_halfwidth);
        get(b, "configuration", "intensity", cfg.intensity);
        get(b, "configuration", "kind", kind_name);
        get(b, "configuration", "hc_radius", cfg.hc_radius);
        get(b, "configuration", "seed", cfg.seed);
    }
    if (j.contains("drift")) {
        const auto& b = j["drift"];
        get(b, "drift", "kind", drift_kind);
        get(b, "drift", "r", cfg.drift.r);
        get(b, "drift", "J", cfg.drift.J);
    }
    if (j.contains("diffusion")) {
        const auto& b = j["diffusion"];
        get(b, "diffusion", "kind", diff_kind);
        get(b, "diffusion", "r", cfg.diffusion.r);
        get(b, "diffusion", "J", cfg.diffusion.J);
    }
    if (j.contains("scale")) {
        const auto& b = j["scale"];
        get(b, "scale", "alpha_star", cfg.alpha_star);
        get(b, "scale", "alpha_sup", cfg.alpha_sup);
        get(b, "scale", "grid_points", cfg.grid_points);
    }
    if (j.contains("dynamics")) {
        const auto& b = j["dynamics"];
        get(b, "dynamics", "T", cfg.T);
        get(b, "dynamics", "n_steps", cfg.n_steps);
        get(b, "dynamics", "M", cfg.replicas);
        get(b, "dynamics", "p", cfg.p);
        get(b, "dynamics", "q", cfg.q);
        if (b.contains("u0")) {
            const auto& u0 = b["u0"];
            if (u0.contains("constant")) get(u0, "dynamics.u0", "constant", cfg.u0_constant);
            if (u0.contains("values")) get(u0, "dynamics.u0", "values", cfg.u0_values);
        }
    }
    if (j.contains("run")) {
        const auto& b = j["run"];
        get(b, "run", "suite", cfg.suite);
        get(b, "run", "tol", cfg.tol);
        get(b, "run", "out_dir", cfg.out_dir);
    }

    try {
        cfg.kind = config_kind_from_string(kind_name);
    } catch (const std::invalid_argument& e) {
        problems.push_back(std::string("configuration.kind: ") + e.what());
    }
    try {
        cfg.drift.kind = interaction_kind_from_string(drift_kind);
    } catch (const std::invalid_argument& e) {
        problems.push_back(std::string("drift.kind: ") + e.what());
    }
    try {
        cfg.diffusion.kind = interaction_kind_from_string(diff_kind);
    } catch (const std::invalid_argument& e) {
        problems.push_back(std::string("diffusion.kind: ") + e.what());
    }

    if (cfg.dim < 1) problems.push_back("configuration.dim: must be >= 1");
    if (!(cfg.box_halfwidth > 0)) problems.push_back("configuration.box_halfwidth: must be > 0");
    if (cfg.intensity < 0) problems.push_back("configuration.intensity: must be >= 0");
    if (cfg.kind == ConfigKind::hardcore && !(cfg.hc_radius > 0))
        problems.push_back("configuration.hc_radius: must be > 0 for hardcore sampling");
    if (!(cfg.drift.r > 0)) problems.push_back("drift.r: must be > 0");
    if (!(cfg.diffusion.r > 0)) problems.push_back("diffusion.r: must be > 0");
    if (!(cfg.alpha_star >= 0) || !(cfg.alpha_star < cfg.alpha_sup))
        problems.push_back("scale: requires 0 <= alpha_star < alpha_sup");
    if (cfg.grid_points < 2) problems.push_back("scale.grid_points: must be >= 2");
    if (!(cfg.T > 0)) problems.push_back("dynamics.T: must be > 0");
    if (cfg.n_steps < 1) problems.push_back("dynamics.n_steps: must be >= 1");
    if (cfg.replicas < 1) problems.push_back("dynamics.M: must be >= 1");
    if (!(cfg.p >= 2)) problems.push_back("dynamics.p: must be >= 2");
    if (!(cfg.q > cfg.p))
        problems.push_back("dynamics.q: must exceed p (the existence theory needs p in [2, q))");
    if (!(cfg.tol > 0)) problems.push_back("run.tol: must be > 0");
    if (std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end())
        problems.push_back("run.suite: unknown suite '" + cfg.suite + "'");

    if (!problems.empty()) throw ConfigError(std::move(problems));
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace spinscale

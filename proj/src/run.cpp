#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "spinscale/config.hpp"
#include "spinscale/csv.hpp"
#include "spinscale/estimates.hpp"
#include "spinscale/operators.hpp"
#include "spinscale/picard.hpp"
#include "spinscale/rng.hpp"

namespace spinscale {

namespace {

struct SuiteContext {
    const ExperimentConfig& cfg;
    RunArtifact& artifact;

    void check(const std::string& name, bool pass, double measured, double bound,
               std::string note = {}) {
        artifact.checks.push_back({name, pass, measured, bound, std::move(note)});
        if (!pass) artifact.all_pass = false;
    }
};

bool wants(const ExperimentConfig& cfg, const char* suite) {
    if (cfg.suite == "full") return true;
    if (cfg.suite == "estimates-only") return std::string(suite) == "estimates";
    return cfg.suite == suite;
}

WeightedSpinVector initial_value(const ExperimentConfig& cfg, const ConfigPtr& config) {
    if (cfg.u0_values.empty()) return WeightedSpinVector::constant(config, cfg.u0_constant);
    if (static_cast<int>(cfg.u0_values.size()) != config->site_count())
        throw std::invalid_argument("dynamics.u0.values: length does not match the sampled "
                                    "configuration (" +
                                    std::to_string(config->site_count()) + " sites)");
    return WeightedSpinVector(config, cfg.u0_values);
}

void run_sample_suite(SuiteContext& ctx, const ConfigPtr& config, const NeighborStructure& ns) {
    const auto& cfg = ctx.cfg;
    ctx.artifact.tables["configuration.json"] = config->to_json();

    CsvTable neighbors({"site", "radius", "n_x", "N_x"});
    for (int i = 0; i < config->site_count(); ++i)
        neighbors.add_row({std::to_string(i), format_double(config->radius(i)),
                           std::to_string(ns.n[i]), std::to_string(ns.big_n[i])});
    ctx.artifact.tables["neighbors.csv"] = neighbors.body();

    const auto fit = regularity_fit(ns, *config, cfg.q);
    CsvTable reg({"q", "a_fit", "c_log_fit", "worst_site"});
    reg.add_row({format_double(fit.q), format_double(fit.a_fit), format_double(fit.c_log_fit),
                 std::to_string(fit.worst_site)});
    ctx.artifact.tables["regularity.csv"] = reg.body();

    ctx.check("regularity_finite", std::isfinite(fit.a_fit), fit.a_fit,
              std::numeric_limits<double>::infinity());
}

void run_estimates_suite(SuiteContext& ctx) {
    const auto& cfg = ctx.cfg;
    const double delta = cfg.alpha_sup - cfg.alpha_star;

    CsvTable bounds({"n", "p", "q", "delta", "L", "T", "bound"});
    for (int n = 0; n <= 20; ++n)
        bounds.add_row({std::to_string(n), format_double(cfg.p), format_double(cfg.q),
                        format_double(delta), format_double(1.0), format_double(cfg.T),
                        format_double(picard_bound(n, cfg.p, cfg.q, delta, 1.0, cfg.T))});
    ctx.artifact.tables["bounds.csv"] = bounds.body();

    CsvTable series({"t", "eps", "theta", "p", "E_value", "terms"});
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        const auto res = e_series(t, delta, 1.0 / cfg.q, cfg.p, 1e-12);
        series.add_row({format_double(t), format_double(delta), format_double(1.0 / cfg.q),
                        format_double(cfg.p), format_double(res.value),
                        std::to_string(res.terms)});
    }
    ctx.artifact.tables["eseries.csv"] = series.body();

    // sanity: the printed inequality between the two closed-form constants
    const double lhs = std::pow(hat_L(cfg.p, 1.0, cfg.T) * cfg.T, 1.0 / cfg.p);
    const double rhs = a_T(cfg.p, 1.0, cfg.T);
    ctx.check("constant_dominance", lhs <= rhs * (1 + 1e-12), lhs, rhs);
}

void run_operator_suite(SuiteContext& ctx) {
    const auto& cfg = ctx.cfg;
    const ScaleInterval scale =
        ScaleInterval::uniform(cfg.alpha_star, cfg.alpha_sup, std::max(cfg.grid_points, 5));

    KernelSpec kernel{1.0, cfg.alpha_sup + 1.0, 0.25, 2.0};
    const auto report =
        singularity_fit(kernel, scale, 6, rng::derive_seed(cfg.seed, "operator-fit"));

    CsvTable sweep({"alpha", "beta", "ratio_max", "bound", "p", "delta"});
    const double inv_q = std::isfinite(report.q_pred) ? 1.0 / report.q_pred : 0.0;
    bool enveloped = true;
    for (const auto& s : report.sweep) {
        const double bound = report.c_fit * std::pow(s.beta - s.alpha, -inv_q);
        if (s.ratio_max > bound * (1 + 1e-12)) enveloped = false;
        sweep.add_row({format_double(s.alpha), format_double(s.beta), format_double(s.ratio_max),
                       format_double(bound), format_double(kernel.p),
                       format_double(kernel.delta)});
    }
    ctx.artifact.tables["operator_sweep.csv"] = sweep.body();
    ctx.check("operator_envelope", enveloped, report.q_emp, report.q_pred);

    MatrixSpec matrix{1.0, cfg.alpha_sup + 1.0, 0.25, 2.0, 40};
    double max_diag = 0;
    for (int j = -matrix.k_max; j <= matrix.k_max; ++j)
        max_diag = std::max(max_diag, std::abs(matrix.entry(j, j)));
    const double predicted = matrix.a * std::pow(1.0 + matrix.k_max, matrix.delta);
    ctx.check("matrix_diagonal_growth", std::abs(max_diag - predicted) <= 0.1 * predicted,
              max_diag, predicted);
}

void run_dynamics_suites(SuiteContext& ctx, const ConfigPtr& config, const NeighborStructure& ns) {
    const auto& cfg = ctx.cfg;
    const ScaleInterval scale =
        ScaleInterval::uniform(cfg.alpha_star, cfg.alpha_sup, cfg.grid_points);
    const InteractionFamily drift = cfg.drift.family();
    const InteractionFamily diffusion = cfg.diffusion.family();
    const TimeGrid grid{cfg.T, cfg.n_steps};
    const WeightedSpinVector u0 = initial_value(cfg, config);
    const NoiseBundle noise =
        generate_noise(config, grid, cfg.replicas, rng::derive_seed(cfg.seed, "dynamics"));

    // empirical scale-Lipschitz constants feed the theoretical bounds below
    const auto gl_drift = gl_exponent_fit(MapKind::drift, drift, config, ns, scale, 16,
                                          rng::derive_seed(cfg.seed, "gl"));
    const auto gl_diff = gl_exponent_fit(MapKind::diffusion, diffusion, config, ns, scale, 16,
                                         rng::derive_seed(cfg.seed, "gl"));
    const double L_emp = std::max(gl_drift.L_emp, gl_diff.L_emp);
    ctx.check("gl_drift_exponent", gl_drift.zero_map || gl_drift.q_emp >= 2.0, gl_drift.q_emp,
              2.0);
    ctx.check("gl_diffusion_exponent", gl_diff.zero_map || gl_diff.q_emp >= 2.0, gl_diff.q_emp,
              2.0);

    const auto adm_drift = admissibility_check(drift, 4096, rng::derive_seed(cfg.seed, "adm"));
    const auto adm_diff = admissibility_check(diffusion, 4096, rng::derive_seed(cfg.seed, "adm"));
    ctx.check("admissibility_drift", adm_drift.within_declared && adm_drift.range_ok,
              adm_drift.C_emp, drift.lipschitz_C);
    ctx.check("admissibility_diffusion", adm_diff.within_declared && adm_diff.range_ok,
              adm_diff.C_emp, diffusion.lipschitz_C);

    if (wants(cfg, "simulate")) {
        const auto ens = euler_maruyama(drift, diffusion, u0, ns, grid, noise);
        CsvTable znorm({"t", "alpha", "p", "z_norm", "stderr"});
        for (double alpha : scale.grid) {
            const auto est = zp_norm_estimate(ens, alpha, cfg.p);
            znorm.add_row({format_double(est.t_sup), format_double(alpha), format_double(cfg.p),
                           format_double(est.value), format_double(est.std_error)});
        }
        ctx.artifact.tables["znorm.csv"] = znorm.body();

        const auto est_top = zp_norm_estimate(ens, scale.top(), cfg.p);
        const double g_bound =
            L_emp > 0 ? growth_bound(cfg.p, cfg.q, L_emp, cfg.T, scale.top() - scale.alpha_star,
                                     weighted_norm(u0, cfg.alpha_star))
                      : std::pow(1.0 + weighted_norm(u0, cfg.alpha_star), cfg.p);
        ctx.check("growth_bound", est_top.value <= g_bound, est_top.value, g_bound);

        const auto kol = kolmogorov_fit(ens, scale.top(), cfg.p, 256,
                                        rng::derive_seed(cfg.seed, "kolmogorov"));
        ctx.check("kolmogorov_slope", kol.degenerate || kol.slope >= cfg.p / 2.0 - 0.15,
                  kol.slope, cfg.p / 2.0 - 0.15,
                  kol.degenerate ? "degenerate (constant paths)" : "");
    }

    if (wants(cfg, "picard")) {
        auto result =
            picard_iterate(u0, drift, diffusion, ns, grid, noise, scale, cfg.p, 20, cfg.tol);
        const auto constants =
            make_contraction_constants(cfg.p, cfg.q, std::max(L_emp, 1e-300), cfg.T);
        const auto rows = contraction_report(result.diagnostics, constants);

        CsvTable contraction({"n", "beta", "measured", "stderr", "bound", "ratio"});
        bool dominated = true;
        for (const auto& row : rows) {
            if (row.n >= 1 && row.flagged) dominated = false;
            contraction.add_row({std::to_string(row.n), format_double(scale.top()),
                                 format_double(row.measured), format_double(row.std_error),
                                 format_double(row.bound), format_double(row.ratio)});
        }
        ctx.artifact.tables["contraction.csv"] = contraction.body();
        ctx.check("picard_contraction", dominated, 0, 1);

        CsvTable residual({"beta", "residual", "stderr"});
        bool residual_ok = true;
        for (std::size_t b = 0; b < scale.grid.size(); ++b) {
            const auto& res = result.diagnostics.residual[b];
            residual.add_row({format_double(scale.grid[b]), format_double(res.value),
                              format_double(res.std_error)});
            if (res.value > cfg.tol + 3.0 * res.std_error) residual_ok = false;
        }
        ctx.artifact.tables["residual.csv"] = residual.body();
        ctx.check("picard_residual", residual_ok,
                  result.diagnostics.residual.back().value, cfg.tol);
        ctx.check("picard_converged", result.diagnostics.converged,
                  result.diagnostics.iterations, 20);
    }
}

}  // namespace

RunArtifact run_experiment(const ExperimentConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    RunArtifact artifact;
    SuiteContext ctx{cfg, artifact};

    try {
        if (wants(cfg, "estimates")) run_estimates_suite(ctx);
        if (wants(cfg, "operator-fit")) run_operator_suite(ctx);

        const bool needs_points = wants(cfg, "sample") || wants(cfg, "simulate") ||
                                  wants(cfg, "picard");
        if (needs_points) {
            ConfigPtr config =
                cfg.kind == ConfigKind::hardcore
                    ? sample_hardcore(cfg.dim, cfg.box_halfwidth, cfg.intensity, cfg.hc_radius,
                                      cfg.seed)
                    : sample_poisson(cfg.dim, cfg.box_halfwidth, cfg.intensity, cfg.seed);
            const auto ns = build_neighbors(config, cfg.drift.r);
            if (wants(cfg, "sample")) run_sample_suite(ctx, config, ns);
            if (wants(cfg, "simulate") || wants(cfg, "picard"))
                run_dynamics_suites(ctx, config, ns);
        }
    } catch (const std::exception& e) {
        ctx.check("error", false, 0, 0, e.what());
    }

    const auto elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    nlohmann::json manifest;
    manifest["config"] = nlohmann::json::parse(cfg.to_json());
    manifest["version"] = "spinscale 0.1.0";
    manifest["wall_time_seconds"] = elapsed;
    auto checks = nlohmann::json::array();
    for (const auto& c : artifact.checks)
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"measured", c.measured},
                          {"bound", c.bound},
                          {"note", c.note}});
    manifest["checks"] = std::move(checks);
    manifest["all_pass"] = artifact.all_pass;
    artifact.manifest = manifest.dump(2);

    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        {
            std::ofstream out(std::filesystem::path(cfg.out_dir) / "manifest.json");
            out << artifact.manifest << '\n';
        }
        for (const auto& [name, body] : artifact.tables) {
            std::ofstream out(std::filesystem::path(cfg.out_dir) / name);
            out << body;
        }
    }
    return artifact;
}

}  // namespace spinscale

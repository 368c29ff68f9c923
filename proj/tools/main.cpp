#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "spinscale/config.hpp"
#include "spinscale/parallel.hpp"

namespace {

int run_suite(const std::string& suite, const std::string& config_path,
              const std::string& out_dir, bool seed_set, std::uint64_t seed, int workers) {
    spinscale::set_worker_count(workers);
    spinscale::ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = spinscale::load_config(config_path);
        cfg.suite = suite;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed_set) cfg.seed = seed;
    } catch (const spinscale::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }

    const auto artifact = spinscale::run_experiment(cfg);
    for (const auto& check : artifact.checks) {
        std::printf("[%s] %-26s measured=%-13.6g bound=%-13.6g %s\n",
                    check.pass ? "PASS" : "FAIL", check.name.c_str(), check.measured,
                    check.bound, check.note.c_str());
    }
    if (!cfg.out_dir.empty()) std::printf("artifacts written to %s\n", cfg.out_dir.c_str());
    return artifact.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spin dynamics on random point configurations in a scale of weighted spaces"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 1;
    app.add_option("--config", config_path, "experiment config JSON")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory for CSV tables and manifest");
    app.add_option("--seed", seed, "master seed override")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_option("--workers", workers, "worker thread count (never changes results)");

    for (const char* name : {"sample", "simulate", "picard", "estimates", "operator-fit", "full"})
        app.add_subcommand(name)->fallthrough();

    CLI11_PARSE(app, argc, argv);
    const std::string suite = app.get_subcommands().front()->get_name();
    return run_suite(suite, config_path, out_dir, seed_set, seed, workers);
}

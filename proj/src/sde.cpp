#include "spinscale/sde.hpp"

#include <cmath>

#include "spinscale/parallel.hpp"
#include "spinscale/rng.hpp"

namespace spinscale {

namespace {
int g_workers = 1;
}

int worker_count() { return g_workers; }

void set_worker_count(int n) { g_workers = n < 1 ? 1 : n; }

NoiseBundle::NoiseBundle(std::uint64_t seed, int replicas, int n_steps, int n_sites, double dt)
    : seed_(seed), replicas_(replicas), n_steps_(n_steps), n_sites_(n_sites), dt_(dt),
      inc_(static_cast<std::size_t>(replicas) * n_steps * n_sites) {
    if (replicas < 1) throw std::invalid_argument("replica count must be >= 1");
}

NoiseBundle generate_noise(const ConfigPtr& config, const TimeGrid& grid, int replicas,
                           std::uint64_t seed) {
    grid.validate();
    NoiseBundle bundle(seed, replicas, grid.n_steps, config->site_count(), grid.dt());
    const double scale = std::sqrt(grid.dt());
    const std::uint64_t key = rng::derive_seed(seed, "noise");
    const int n_sites = config->site_count();
    parallel_for(replicas, [&](int m) {
        for (int k = 0; k < grid.n_steps; ++k)
            for (int x = 0; x < n_sites; ++x) {
                const std::uint64_t counter =
                    (static_cast<std::uint64_t>(m) * grid.n_steps + k) * n_sites + x;
                bundle.increment(m, k, x) = scale * rng::counter_normal(key, counter);
            }
    });
    return bundle;
}

NoiseBundle coarsen_noise(const NoiseBundle& fine) {
    if (fine.n_steps() % 2 != 0)
        throw std::invalid_argument("coarsen_noise requires an even step count");
    NoiseBundle coarse(fine.seed(), fine.replica_count(), fine.n_steps() / 2, fine.n_sites(),
                       2.0 * fine.dt());
    for (int m = 0; m < fine.replica_count(); ++m)
        for (int k = 0; k < coarse.n_steps(); ++k)
            for (int x = 0; x < fine.n_sites(); ++x)
                coarse.increment(m, k, x) =
                    fine.increment(m, 2 * k, x) + fine.increment(m, 2 * k + 1, x);
    return coarse;
}

ProcessEnsemble::ProcessEnsemble(ConfigPtr config, TimeGrid grid, int replicas)
    : config_(std::move(config)), grid_(grid), replicas_(replicas),
      n_sites_(config_->site_count()),
      data_(static_cast<std::size_t>(replicas) * grid.n_times() * n_sites_) {
    grid_.validate();
    if (replicas < 1) throw std::invalid_argument("replica count must be >= 1");
}

ProcessEnsemble ProcessEnsemble::constant(const WeightedSpinVector& u0, const TimeGrid& grid,
                                          int replicas) {
    ProcessEnsemble ens(u0.config(), grid, replicas);
    for (int m = 0; m < replicas; ++m)
        for (int k = 0; k < grid.n_times(); ++k) {
            auto s = ens.state(m, k);
            std::copy(u0.values().begin(), u0.values().end(), s.begin());
        }
    return ens;
}

WeightedSpinVector ProcessEnsemble::state_vector(int m, int k) const {
    auto s = state(m, k);
    return WeightedSpinVector(config_, std::vector<double>(s.begin(), s.end()));
}

ProcessEnsemble euler_maruyama(const InteractionFamily& drift, const InteractionFamily& diffusion,
                               const WeightedSpinVector& u0, const NeighborStructure& ns,
                               const TimeGrid& grid, const NoiseBundle& noise) {
    require_same_config(u0.config(), ns.config);
    grid.validate();
    if (noise.n_steps() != grid.n_steps || noise.n_sites() != u0.size())
        throw std::invalid_argument("noise bundle does not match grid/configuration");

    const auto& cfg = *ns.config;
    const int n_sites = cfg.site_count();
    const double dt = grid.dt();
    ProcessEnsemble ens(u0.config(), grid, noise.replica_count());

    parallel_for(noise.replica_count(), [&](int m) {
        auto first = ens.state(m, 0);
        std::copy(u0.values().begin(), u0.values().end(), first.begin());
        for (int k = 0; k < grid.n_steps; ++k) {
            auto cur = ens.state(m, k);
            auto next = ens.state(m, k + 1);
            for (int x = 0; x < n_sites; ++x) {
                double f = 0, b = 0;
                for (int y : ns.adjacency[x]) {
                    const double d = cfg.distance(x, y);
                    f += drift.pair(d, cur[x], cur[y]);
                    b += diffusion.pair(d, cur[x], cur[y]);
                }
                const double v = cur[x] + f * dt + b * noise.increment(m, k, x);
                if (!std::isfinite(v)) throw IntegrationDiverged(m, k);
                next[x] = v;
            }
        }
    });
    return ens;
}

double increment_moment(const ProcessEnsemble& ens, int s_idx, int t_idx, double beta, double p) {
    if (p < 2) throw std::invalid_argument("increment moment requires p >= 2");
    if (s_idx < 0 || t_idx > ens.grid().n_times() - 1 || s_idx >= t_idx)
        throw std::out_of_range("increment_moment requires 0 <= s_idx < t_idx <= n_steps");
    auto radii = ens.config()->radii();
    const int n_sites = ens.config()->site_count();
    std::vector<double> buffer(n_sites);
    double sum = 0;
    for (int m = 0; m < ens.replica_count(); ++m) {
        auto a = ens.state(m, t_idx);
        auto b = ens.state(m, s_idx);
        for (int i = 0; i < n_sites; ++i) buffer[i] = a[i] - b[i];
        sum += std::pow(weighted_sq_norm(buffer, radii, beta), p / 2.0);
    }
    return sum / ens.replica_count();
}

}  // namespace spinscale

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinscale/interactions.hpp"
#include "spinscale/point_process.hpp"
#include "spinscale/scale.hpp"

namespace spinscale {

struct TimeGrid {
    double T = 1.0;
    int n_steps = 1;

    double dt() const { return T / n_steps; }
    int n_times() const { return n_steps + 1; }
    double time(int k) const { return T * k / n_steps; }
    void validate() const {
        if (!(T > 0) || n_steps < 1) throw std::invalid_argument("invalid time grid");
    }
};

struct IntegrationDiverged : std::runtime_error {
    int replica;
    int step;
    IntegrationDiverged(int replica_, int step_)
        : std::runtime_error("integration diverged at replica " + std::to_string(replica_) +
                             ", step " + std::to_string(step_)),
          replica(replica_), step(step_) {}
};

/// Brownian increments per (replica, step, site), Normal(0, dt). Every entry
/// is addressed by a counter, so the bundle is identical for any evaluation
/// order and worker count.
class NoiseBundle {
  public:
    NoiseBundle(std::uint64_t seed, int replicas, int n_steps, int n_sites, double dt);

    std::uint64_t seed() const { return seed_; }
    int replica_count() const { return replicas_; }
    int n_steps() const { return n_steps_; }
    int n_sites() const { return n_sites_; }
    double dt() const { return dt_; }

    double increment(int m, int k, int x) const {
        return inc_[(static_cast<std::size_t>(m) * n_steps_ + k) * n_sites_ + x];
    }
    double& increment(int m, int k, int x) {
        return inc_[(static_cast<std::size_t>(m) * n_steps_ + k) * n_sites_ + x];
    }

  private:
    std::uint64_t seed_;
    int replicas_, n_steps_, n_sites_;
    double dt_;
    std::vector<double> inc_;  // (m, k, x) lexicographic
};

NoiseBundle generate_noise(const ConfigPtr& config, const TimeGrid& grid, int replicas,
                           std::uint64_t seed);

// Sums adjacent increment pairs: the same Brownian paths on a grid with half
// the steps. Requires an even step count.
NoiseBundle coarsen_noise(const NoiseBundle& fine);

/// M replica spin paths on a common time grid.
class ProcessEnsemble {
  public:
    ProcessEnsemble(ConfigPtr config, TimeGrid grid, int replicas);
    static ProcessEnsemble constant(const WeightedSpinVector& u0, const TimeGrid& grid,
                                    int replicas);

    const ConfigPtr& config() const { return config_; }
    const TimeGrid& grid() const { return grid_; }
    int replica_count() const { return replicas_; }

    std::span<const double> state(int m, int k) const {
        return {data_.data() + offset(m, k), static_cast<std::size_t>(n_sites_)};
    }
    std::span<double> state(int m, int k) {
        return {data_.data() + offset(m, k), static_cast<std::size_t>(n_sites_)};
    }
    WeightedSpinVector state_vector(int m, int k) const;

    bool operator==(const ProcessEnsemble& other) const {
        return config_.get() == other.config_.get() && grid_.n_steps == other.grid_.n_steps &&
               grid_.T == other.grid_.T && data_ == other.data_;
    }

  private:
    std::size_t offset(int m, int k) const {
        return (static_cast<std::size_t>(m) * grid_.n_times() + k) * n_sites_;
    }
    ConfigPtr config_;
    TimeGrid grid_;
    int replicas_;
    int n_sites_;
    std::vector<double> data_;
};

// Explicit left-point Euler-Maruyama for
//   d sigma_x = driftfield_x(sigma) dt + difffield_x(sigma) dW_x.
ProcessEnsemble euler_maruyama(const InteractionFamily& drift, const InteractionFamily& diffusion,
                               const WeightedSpinVector& u0, const NeighborStructure& ns,
                               const TimeGrid& grid, const NoiseBundle& noise);

// Replica average of ||xi(t) - xi(s)||_beta^p.
double increment_moment(const ProcessEnsemble& ens, int s_idx, int t_idx, double beta, double p);

}  // namespace spinscale

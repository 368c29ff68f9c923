#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace spinscale {

enum class ConfigKind { poisson, hardcore, lattice, explicit_points };

std::string to_string(ConfigKind kind);
ConfigKind config_kind_from_string(const std::string& name);

/// A finite point set in the box [-R, R]^d: the quenched particle positions.
class Configuration {
  public:
    Configuration(int dim, double box_halfwidth, std::vector<double> coords,
                  ConfigKind kind, std::uint64_t seed);

    int dim() const { return dim_; }
    double box_halfwidth() const { return box_halfwidth_; }
    ConfigKind kind() const { return kind_; }
    std::uint64_t seed() const { return seed_; }

    int site_count() const { return static_cast<int>(radii_.size()); }
    std::span<const double> position(int i) const {
        return {coords_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
    }
    // Euclidean distance of site i from the origin, cached.
    double radius(int i) const { return radii_[i]; }
    std::span<const double> radii() const { return radii_; }

    double distance(int i, int j) const;

    std::string to_json() const;
    static Configuration from_json(const std::string& text);

  private:
    int dim_;
    double box_halfwidth_;
    std::vector<double> coords_;  // site-major, dim_ entries per site
    std::vector<double> radii_;
    ConfigKind kind_;
    std::uint64_t seed_;
};

using ConfigPtr = std::shared_ptr<const Configuration>;

ConfigPtr sample_poisson(int dim, double box_halfwidth, double intensity, std::uint64_t seed);

// Matern-II thinning: a Poisson point survives iff no point with a smaller
// independent mark lies within hc_radius.
ConfigPtr sample_hardcore(int dim, double box_halfwidth, double intensity, double hc_radius,
                          std::uint64_t seed);

// Integer-spacing grid covering the box; handy deterministic test input.
ConfigPtr lattice_configuration(int dim, double box_halfwidth, double spacing);

ConfigPtr explicit_configuration(int dim, double box_halfwidth, std::vector<double> coords);

/// Radius-r adjacency with the per-site counts n_x and N_y used by the
/// density-regularity bounds.
struct NeighborStructure {
    ConfigPtr config;
    double r = 0;
    std::vector<std::vector<int>> adjacency;  // sorted site ids, self excluded
    std::vector<int> n;                       // n_x = |adjacency[x]|
    std::vector<long long> big_n;             // N_y = sum of n_x over x adjacent to y
};

NeighborStructure build_neighbors(const ConfigPtr& config, double r);

struct RegularityFit {
    double q = 0;
    double a_fit = 0;      // smallest a with n_x <= a (1+|x|)^{1/q}
    double c_log_fit = 0;  // smallest c with n_x <= c [1+log(1+|x|)] r^d
    int worst_site = -1;   // argmax of the a_fit ratio, -1 when empty
};

RegularityFit regularity_fit(const NeighborStructure& ns, const Configuration& config, double q);

}  // namespace spinscale

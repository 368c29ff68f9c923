#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "spinscale/point_process.hpp"

namespace spinscale {

class ProcessEnsemble;  // sde.hpp

struct ConfigMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The index interval [alpha_*, alpha^*] with the diagnostic grid used for
/// norm sweeps.
struct ScaleInterval {
    double alpha_star = 0;
    double alpha_sup = 0;
    std::vector<double> grid;

    static ScaleInterval uniform(double alpha_star, double alpha_sup, int n_points);
    void validate() const;
    double top() const { return grid.back(); }
};

/// A spin assignment (sigma_x)_{x in gamma} over a fixed configuration.
class WeightedSpinVector {
  public:
    WeightedSpinVector(ConfigPtr config, std::vector<double> values);
    static WeightedSpinVector constant(ConfigPtr config, double value);
    static WeightedSpinVector zero(ConfigPtr config);

    const ConfigPtr& config() const { return config_; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    double operator[](int i) const { return values_[i]; }
    double& operator[](int i) { return values_[i]; }
    int size() const { return static_cast<int>(values_.size()); }

    WeightedSpinVector& operator+=(const WeightedSpinVector& other);
    WeightedSpinVector& operator-=(const WeightedSpinVector& other);
    WeightedSpinVector& operator*=(double c);
    friend WeightedSpinVector operator+(WeightedSpinVector a, const WeightedSpinVector& b) {
        return a += b;
    }
    friend WeightedSpinVector operator-(WeightedSpinVector a, const WeightedSpinVector& b) {
        return a -= b;
    }
    friend WeightedSpinVector operator*(double c, WeightedSpinVector v) { return v *= c; }

  private:
    ConfigPtr config_;
    std::vector<double> values_;
};

void require_same_config(const ConfigPtr& a, const ConfigPtr& b);

// sqrt(sum_x v_x^2 e^{-alpha |x|}); sites summed in ascending index order.
double weighted_norm(const WeightedSpinVector& v, double alpha);
double weighted_sq_norm(std::span<const double> values, std::span<const double> radii,
                        double alpha);

double norm_distance(const WeightedSpinVector& a, const WeightedSpinVector& b, double alpha);

struct ZpNormEstimate {
    double value = 0;      // sup over grid times of (mean ||u(t)||^p)^{1/p}
    double std_error = 0;  // standard error of the replica mean at t_sup
    double p = 2;
    double alpha = 0;
    double t_sup = 0;
};

ZpNormEstimate zp_norm_estimate(const ProcessEnsemble& ens, double alpha, double p);

// Z-norm of the replica-wise difference of two ensembles on the same grid.
ZpNormEstimate zp_distance(const ProcessEnsemble& a, const ProcessEnsemble& b, double alpha,
                           double p);

}  // namespace spinscale

#include "spinscale/scale.hpp"

#include <cmath>

#include "spinscale/sde.hpp"

namespace spinscale {

ScaleInterval ScaleInterval::uniform(double alpha_star, double alpha_sup, int n_points) {
    if (n_points < 2) throw std::invalid_argument("scale grid needs at least 2 points");
    ScaleInterval s;
    s.alpha_star = alpha_star;
    s.alpha_sup = alpha_sup;
    s.grid.resize(n_points);
    for (int i = 0; i < n_points; ++i)
        s.grid[i] = alpha_star + (alpha_sup - alpha_star) * i / (n_points - 1);
    s.grid.back() = alpha_sup;
    s.validate();
    return s;
}

void ScaleInterval::validate() const {
    if (!(alpha_star >= 0) || !(alpha_star < alpha_sup))
        throw std::invalid_argument("scale interval requires 0 <= alpha_* < alpha^*");
    if (grid.empty()) throw std::invalid_argument("scale grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < alpha_star || grid[i] > alpha_sup)
            throw std::invalid_argument("scale grid point outside [alpha_*, alpha^*]");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::invalid_argument("scale grid must be strictly increasing");
    }
}

WeightedSpinVector::WeightedSpinVector(ConfigPtr config, std::vector<double> values)
    : config_(std::move(config)), values_(std::move(values)) {
    if (!config_) throw std::invalid_argument("null configuration");
    if (static_cast<int>(values_.size()) != config_->site_count())
        throw ConfigMismatch("value count does not match configuration site count");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite spin value");
}

WeightedSpinVector WeightedSpinVector::constant(ConfigPtr config, double value) {
    std::vector<double> values(config->site_count(), value);
    return WeightedSpinVector(std::move(config), std::move(values));
}

WeightedSpinVector WeightedSpinVector::zero(ConfigPtr config) {
    return constant(std::move(config), 0.0);
}

void require_same_config(const ConfigPtr& a, const ConfigPtr& b) {
    if (a.get() != b.get())
        throw ConfigMismatch("operands refer to different configurations");
}

WeightedSpinVector& WeightedSpinVector::operator+=(const WeightedSpinVector& other) {
    require_same_config(config_, other.config_);
    for (int i = 0; i < size(); ++i) values_[i] += other.values_[i];
    return *this;
}

WeightedSpinVector& WeightedSpinVector::operator-=(const WeightedSpinVector& other) {
    require_same_config(config_, other.config_);
    for (int i = 0; i < size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

WeightedSpinVector& WeightedSpinVector::operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
}

double weighted_sq_norm(std::span<const double> values, std::span<const double> radii,
                        double alpha) {
    double s = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
        s += values[i] * values[i] * std::exp(-alpha * radii[i]);
    return s;
}

double weighted_norm(const WeightedSpinVector& v, double alpha) {
    if (!(alpha >= 0)) throw std::invalid_argument("alpha must be >= 0");
    return std::sqrt(weighted_sq_norm(v.values(), v.config()->radii(), alpha));
}

double norm_distance(const WeightedSpinVector& a, const WeightedSpinVector& b, double alpha) {
    require_same_config(a.config(), b.config());
    double s = 0;
    auto radii = a.config()->radii();
    for (int i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d * std::exp(-alpha * radii[i]);
    }
    return std::sqrt(s);
}

namespace {

// Shared reduction for zp_norm_estimate and zp_distance: diff == nullptr means
// the plain norm. Replicas are summed in ascending index order.
ZpNormEstimate zp_reduce(const ProcessEnsemble& a, const ProcessEnsemble* diff, double alpha,
                         double p) {
    if (p < 2) throw std::invalid_argument("Z-norm requires p >= 2");
    if (a.replica_count() < 1) throw std::invalid_argument("empty ensemble");
    if (diff) {
        require_same_config(a.config(), diff->config());
        if (diff->replica_count() != a.replica_count() ||
            diff->grid().n_steps != a.grid().n_steps)
            throw std::invalid_argument("ensemble shape mismatch");
    }
    const int M = a.replica_count();
    const int n_times = a.grid().n_times();
    auto radii = a.config()->radii();
    const int n_sites = a.config()->site_count();

    ZpNormEstimate best;
    best.p = p;
    best.alpha = alpha;
    double best_mean = -1;
    std::vector<double> buffer(n_sites);
    for (int k = 0; k < n_times; ++k) {
        double sum = 0, sum_sq = 0;
        for (int m = 0; m < M; ++m) {
            auto s = a.state(m, k);
            double sq;
            if (diff) {
                auto s2 = diff->state(m, k);
                for (int i = 0; i < n_sites; ++i) buffer[i] = s[i] - s2[i];
                sq = weighted_sq_norm(buffer, radii, alpha);
            } else {
                sq = weighted_sq_norm(s, radii, alpha);
            }
            const double powed = std::pow(sq, p / 2.0);
            sum += powed;
            sum_sq += powed * powed;
        }
        const double mean = sum / M;
        if (mean > best_mean) {
            best_mean = mean;
            best.value = std::pow(mean, 1.0 / p);
            best.t_sup = a.grid().time(k);
            const double var = std::max(0.0, sum_sq / M - mean * mean);
            best.std_error = M > 1 ? std::sqrt(var / (M - 1)) : 0.0;
        }
    }
    return best;
}

}  // namespace

ZpNormEstimate zp_norm_estimate(const ProcessEnsemble& ens, double alpha, double p) {
    return zp_reduce(ens, nullptr, alpha, p);
}

ZpNormEstimate zp_distance(const ProcessEnsemble& a, const ProcessEnsemble& b, double alpha,
                           double p) {
    return zp_reduce(a, &b, alpha, p);
}

}  // namespace spinscale

#include "spinscale/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinscale/rng.hpp"

namespace spinscale {

double KernelSpec::eval(double x, double y) const {
    return a * std::exp(-(beta_sup / p) * std::abs(x - y)) * std::pow(1.0 + std::abs(y), delta);
}

GridFunction kernel_apply(const KernelSpec& spec, const GridFunction& u) {
    const int n = u.size();
    if (n < 2) throw std::invalid_argument("grid needs at least 2 nodes");
    const double h = u.h();
    GridFunction out;
    out.x_max = u.x_max;
    out.values.resize(n);

    // separable kernel on a uniform grid: exp factor depends on |i-j| only
    const double rho = std::exp(-(spec.beta_sup / spec.p) * h);
    std::vector<double> decay(n);
    decay[0] = 1.0;
    for (int k = 1; k < n; ++k) decay[k] = decay[k - 1] * rho;
    std::vector<double> growth(n);
    for (int j = 0; j < n; ++j)
        growth[j] = spec.a * std::pow(1.0 + std::abs(u.node(j)), spec.delta);

    for (int i = 0; i < n; ++i) {
        double s = 0;
        for (int j = 0; j < n; ++j) {
            const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;  // trapezoid
            s += w * decay[std::abs(i - j)] * growth[j] * u.values[j];
        }
        out.values[i] = h * s;
    }
    return out;
}

double weighted_lp_norm(const GridFunction& u, double alpha, double p) {
    if (!(p > 1)) throw std::invalid_argument("p must be > 1");
    const double h = u.h();
    double s = 0;
    for (int i = 0; i < u.size(); ++i)
        s += h * std::pow(std::abs(u.values[i]), p) * std::exp(-alpha * std::abs(u.node(i)));
    return std::pow(s, 1.0 / p);
}

double MatrixSpec::entry(int k, int j) const {
    if (std::abs(k) > k_max || std::abs(j) > k_max) return 0.0;
    return a * std::exp(-(beta_sup / p) * std::abs(k - j)) * std::pow(1.0 + std::abs(j), delta);
}

std::vector<double> matrix_apply(const MatrixSpec& spec, const std::vector<double>& u) {
    if (static_cast<int>(u.size()) != spec.size())
        throw std::invalid_argument("vector length does not match matrix truncation");
    std::vector<double> out(u.size(), 0.0);
    for (int k = -spec.k_max; k <= spec.k_max; ++k) {
        double s = 0;
        for (int j = -spec.k_max; j <= spec.k_max; ++j)
            s += spec.entry(k, j) * u[j + spec.k_max];
        out[k + spec.k_max] = s;
    }
    return out;
}

double weighted_lp_seq_norm(const std::vector<double>& u, int k_max, double alpha, double p) {
    if (static_cast<int>(u.size()) != 2 * k_max + 1)
        throw std::invalid_argument("vector length does not match truncation");
    double s = 0;
    for (int j = -k_max; j <= k_max; ++j)
        s += std::pow(std::abs(u[j + k_max]), p) * std::exp(-alpha * std::abs(j));
    return std::pow(s, 1.0 / p);
}

namespace {

void check_exponents(double p, double delta) {
    if (!(p > 1)) throw std::invalid_argument("p must be > 1");
    if (delta < 0 || delta > (p - 1) / p)
        throw std::invalid_argument("delta must lie in [0, (p-1)/p]");
}

double predicted_q(double p, double delta) {
    return delta > 0 ? (p - 1) / (p * delta) : std::numeric_limits<double>::infinity();
}

SingularityReport fit_from_sweep(std::vector<SingularitySample> sweep, double p, double delta) {
    SingularityReport report;
    report.q_pred = predicted_q(p, delta);
    report.sweep = std::move(sweep);

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (const auto& s : report.sweep) {
        if (s.ratio_max <= 0) continue;
        const double x = -std::log(s.beta - s.alpha);
        const double y = std::log(s.ratio_max);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    const double det = count * sxx - sx * sx;
    report.slope = (count >= 2 && det != 0) ? (count * sxy - sx * sy) / det : 0.0;
    report.q_emp =
        report.slope > 1e-9 ? 1.0 / report.slope : std::numeric_limits<double>::infinity();

    const double inv_q_pred = std::isfinite(report.q_pred) ? 1.0 / report.q_pred : 0.0;
    for (const auto& s : report.sweep)
        report.c_fit = std::max(report.c_fit, s.ratio_max * std::pow(s.beta - s.alpha, inv_q_pred));
    return report;
}

}  // namespace

SingularityReport singularity_fit(const KernelSpec& spec, const ScaleInterval& scale,
                                  int n_samples, std::uint64_t seed) {
    scale.validate();
    if (scale.grid.size() < 5) throw std::invalid_argument("scale grid needs >= 5 indices");
    check_exponents(spec.p, spec.delta);
    if (!(spec.beta_sup > scale.alpha_sup))
        throw std::invalid_argument("kernel requires beta^* > alpha^*");

    // box large enough that the smallest weight suppresses boundary leakage
    const double x_max = std::ceil(8.0 * std::log(10.0) / scale.alpha_star);

    // refine h until the reference norm ratio moves by < 1%
    auto reference_ratio = [&](int n) {
        GridFunction ones{x_max, std::vector<double>(n, 1.0)};
        auto out = kernel_apply(spec, ones);
        return weighted_lp_norm(out, scale.alpha_sup, spec.p) /
               weighted_lp_norm(ones, scale.alpha_star, spec.p);
    };
    int n = static_cast<int>(2.0 * x_max / 0.25) + 1;
    double prev = reference_ratio(n);
    while (n < 8001) {
        const int n2 = 2 * (n - 1) + 1;
        const double cur = reference_ratio(n2);
        const bool settled = std::abs(cur - prev) <= 0.01 * std::abs(prev);
        n = n2;
        prev = cur;
        if (settled) break;
    }

    rng::Stream stream(rng::derive_seed(seed, "kernel-sweep"));
    std::vector<GridFunction> samples;
    for (int s = 0; s < n_samples; ++s) {
        GridFunction u{x_max, std::vector<double>(n)};
        for (auto& v : u.values) v = stream.normal();
        samples.push_back(std::move(u));
    }
    // delta-like bumps probe the large-|y| singularity the random draws miss
    for (int k = 0; k <= 8; ++k) {
        GridFunction u{x_max, std::vector<double>(n, 0.0)};
        const int i0 = static_cast<int>((k / 8.0) * (n - 1));
        u.values[i0] = 1.0;
        samples.push_back(std::move(u));
    }

    std::vector<GridFunction> images;
    images.reserve(samples.size());
    for (const auto& u : samples) images.push_back(kernel_apply(spec, u));

    std::vector<SingularitySample> sweep;
    for (std::size_t ai = 0; ai < scale.grid.size(); ++ai)
        for (std::size_t bi = ai + 1; bi < scale.grid.size(); ++bi) {
            SingularitySample s{scale.grid[ai], scale.grid[bi], 0.0};
            for (std::size_t u = 0; u < samples.size(); ++u) {
                const double denom = weighted_lp_norm(samples[u], s.alpha, spec.p);
                if (denom == 0) continue;
                s.ratio_max =
                    std::max(s.ratio_max, weighted_lp_norm(images[u], s.beta, spec.p) / denom);
            }
            sweep.push_back(s);
        }
    return fit_from_sweep(std::move(sweep), spec.p, spec.delta);
}

SingularityReport singularity_fit(const MatrixSpec& spec, const ScaleInterval& scale,
                                  int n_samples, std::uint64_t seed) {
    scale.validate();
    if (scale.grid.size() < 5) throw std::invalid_argument("scale grid needs >= 5 indices");
    check_exponents(spec.p, spec.delta);

    rng::Stream stream(rng::derive_seed(seed, "matrix-sweep"));
    const int len = spec.size();
    std::vector<std::vector<double>> samples;
    for (int s = 0; s < n_samples; ++s) {
        std::vector<double> u(len);
        for (auto& v : u) v = stream.normal();
        samples.push_back(std::move(u));
    }
    for (int k = 0; k <= 8; ++k) {
        std::vector<double> u(len, 0.0);
        u[static_cast<int>((k / 8.0) * (len - 1))] = 1.0;
        samples.push_back(std::move(u));
    }

    std::vector<std::vector<double>> images;
    images.reserve(samples.size());
    for (const auto& u : samples) images.push_back(matrix_apply(spec, u));

    std::vector<SingularitySample> sweep;
    for (std::size_t ai = 0; ai < scale.grid.size(); ++ai)
        for (std::size_t bi = ai + 1; bi < scale.grid.size(); ++bi) {
            SingularitySample s{scale.grid[ai], scale.grid[bi], 0.0};
            for (std::size_t u = 0; u < samples.size(); ++u) {
                const double denom = weighted_lp_seq_norm(samples[u], spec.k_max, s.alpha, spec.p);
                if (denom == 0) continue;
                s.ratio_max = std::max(
                    s.ratio_max, weighted_lp_seq_norm(images[u], spec.k_max, s.beta, spec.p) / denom);
            }
            sweep.push_back(s);
        }
    return fit_from_sweep(std::move(sweep), spec.p, spec.delta);
}

}  // namespace spinscale

#include "spinscale/interactions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "spinscale/rng.hpp"

namespace spinscale {

std::string to_string(InteractionKind kind) {
    switch (kind) {
        case InteractionKind::clipped_linear: return "clipped_linear";
        case InteractionKind::tanh_coupling: return "tanh_coupling";
    }
    throw std::logic_error("unknown InteractionKind");
}

InteractionKind interaction_kind_from_string(const std::string& name) {
    if (name == "clipped_linear") return InteractionKind::clipped_linear;
    if (name == "tanh_coupling") return InteractionKind::tanh_coupling;
    throw std::invalid_argument("unknown interaction kind: " + name);
}

InteractionFamily::InteractionFamily(InteractionKind kind_, double r_, double coupling_)
    : kind(kind_), r(r_), coupling(coupling_), lipschitz_C(std::abs(coupling_)) {
    if (!(r > 0)) throw std::invalid_argument("interaction range must be > 0");
}

double InteractionFamily::profile(double dist) const {
    return dist < r ? 1.0 - dist / r : 0.0;
}

double InteractionFamily::pair(double dist, double a, double b) const {
    const double w = profile(dist);
    if (w == 0.0) return 0.0;
    switch (kind) {
        case InteractionKind::clipped_linear:
            return coupling * w * std::clamp(b - a, -1.0, 1.0);
        case InteractionKind::tanh_coupling:
            return coupling * w * std::tanh(b - a);
    }
    throw std::logic_error("unknown InteractionKind");
}

namespace {

WeightedSpinVector neighbor_sum(const InteractionFamily& V, const WeightedSpinVector& sigma,
                                const NeighborStructure& ns) {
    require_same_config(sigma.config(), ns.config);
    const auto& cfg = *ns.config;
    std::vector<double> out(cfg.site_count(), 0.0);
    for (int x = 0; x < cfg.site_count(); ++x) {
        double s = 0;
        for (int y : ns.adjacency[x]) s += V.pair(cfg.distance(x, y), sigma[x], sigma[y]);
        out[x] = s;
    }
    return WeightedSpinVector(sigma.config(), std::move(out));
}

}  // namespace

WeightedSpinVector drift_field(const InteractionFamily& V, const WeightedSpinVector& sigma,
                               const NeighborStructure& ns) {
    return neighbor_sum(V, sigma, ns);
}

WeightedSpinVector diffusion_field(const InteractionFamily& V, const WeightedSpinVector& sigma,
                                   const NeighborStructure& ns) {
    return neighbor_sum(V, sigma, ns);
}

AdmissibilityReport admissibility_check(const InteractionFamily& V, int n_samples,
                                        std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    rng::Stream stream(rng::derive_seed(seed, "admissibility"));
    AdmissibilityReport report;
    for (int i = 0; i < n_samples; ++i) {
        const double dist = stream.uniform(0.0, 2.0 * V.r);
        const double a1 = stream.uniform(-3.0, 3.0);
        const double b1 = stream.uniform(-3.0, 3.0);
        const double a2 = stream.uniform(-3.0, 3.0);
        const double b2 = stream.uniform(-3.0, 3.0);
        const double denom = std::abs(a1 - a2) + std::abs(b1 - b2);
        if (dist >= V.r && V.pair(dist, a1, b1) != 0.0) report.range_ok = false;
        if (denom > 0) {
            const double ratio = std::abs(V.pair(dist, a1, b1) - V.pair(dist, a2, b2)) / denom;
            report.C_emp = std::max(report.C_emp, ratio);
        }
    }
    report.within_declared = report.C_emp <= V.lipschitz_C;
    return report;
}

GLFitReport gl_exponent_fit(MapKind map_kind, const InteractionFamily& V, const ConfigPtr& config,
                            const NeighborStructure& ns, const ScaleInterval& scale, int n_pairs,
                            std::uint64_t seed) {
    scale.validate();
    if (scale.grid.size() < 4) throw std::invalid_argument("scale grid needs >= 4 indices");
    if (n_pairs < 8) throw std::invalid_argument("n_pairs must be >= 8");

    rng::Stream stream(rng::derive_seed(seed, map_kind == MapKind::drift ? "gl-drift" : "gl-diff"));
    const int n_sites = config->site_count();

    // random vector pairs; fields evaluated once per vector
    std::vector<WeightedSpinVector> inputs;
    std::vector<WeightedSpinVector> outputs;
    auto push = [&](WeightedSpinVector u) {
        outputs.push_back(map_kind == MapKind::drift ? drift_field(V, u, ns)
                                                     : diffusion_field(V, u, ns));
        inputs.push_back(std::move(u));
    };
    for (int i = 0; i < 2 * n_pairs; ++i) {
        std::vector<double> vals(n_sites);
        for (auto& v : vals) v = stream.normal();
        push(WeightedSpinVector(config, std::move(vals)));
    }
    // single-site perturbation pairs at the sites nearest the origin: the sup
    // in the Lipschitz ratio is typically attained by localized differences,
    // which dense Gaussian draws systematically miss (their ratios carry a
    // spurious norm-index factor). Probes far from the origin are excluded:
    // their extra e^{-(beta-alpha)|x|} falloff would skew the gap fit.
    std::vector<int> probe_sites(n_sites);
    for (int i = 0; i < n_sites; ++i) probe_sites[i] = i;
    std::sort(probe_sites.begin(), probe_sites.end(),
              [&](int a, int b) { return config->radius(a) < config->radius(b); });
    const int n_probes = std::min(n_sites, 3);
    int total_pairs = n_pairs;
    for (int i = 0; i < n_probes; ++i) {
        std::vector<double> vals(n_sites, 0.0);
        push(WeightedSpinVector::zero(config));
        vals[probe_sites[i]] = 0.5;  // small enough to stay unsaturated
        push(WeightedSpinVector(config, std::move(vals)));
        ++total_pairs;
    }

    struct Pt {
        double delta;
        double max_ratio;
    };
    std::vector<Pt> pts;
    bool any_nonzero = false;
    auto sweep_pair = [&](double alpha, double beta) {
        double max_ratio = 0;
        for (int p = 0; p < total_pairs; ++p) {
            const auto& u = inputs[2 * p];
            const auto& v = inputs[2 * p + 1];
            const double denom = norm_distance(u, v, alpha);
            if (denom == 0) continue;
            const double num = norm_distance(outputs[2 * p], outputs[2 * p + 1], beta);
            if (num > 0) any_nonzero = true;
            max_ratio = std::max(max_ratio, num / denom);
        }
        pts.push_back({beta - alpha, max_ratio});
    };
    for (std::size_t ai = 0; ai < scale.grid.size(); ++ai)
        for (std::size_t bi = ai + 1; bi < scale.grid.size(); ++bi)
            sweep_pair(scale.grid[ai], scale.grid[bi]);
    // the exponent is a beta -> alpha statement, so sample well below the
    // coarse grid spacing too; without these the regression sees only the
    // large-gap tail and overstates the blow-up
    const double width = scale.alpha_sup - scale.alpha_star;
    for (double base : {scale.alpha_star, scale.alpha_star + 0.5 * width})
        for (double frac : {1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4})
            sweep_pair(base, base + frac * width);

    GLFitReport report;
    if (!any_nonzero) {
        report.zero_map = true;
        report.q_emp = std::numeric_limits<double>::infinity();
        return report;
    }

    // collapse to the upper envelope per distinct gap: the bound must hold
    // for every (alpha, beta), so only the worst ratio at each gap binds;
    // mixing base indices into the regression would skew the exponent
    std::map<double, double> envelope;
    for (const auto& pt : pts) {
        auto [it, inserted] = envelope.try_emplace(pt.delta, pt.max_ratio);
        if (!inserted) it->second = std::max(it->second, pt.max_ratio);
    }

    // least squares of log(envelope ratio) against -log(delta)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (const auto& [delta, ratio] : envelope) {
        if (ratio <= 0) continue;
        const double x = -std::log(delta);
        const double y = std::log(ratio);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    const double det = count * sxx - sx * sx;
    double slope = det != 0 ? (count * sxy - sx * sy) / det : 0.0;
    report.slope = slope;
    report.q_emp = slope > 1e-9 ? 1.0 / slope : std::numeric_limits<double>::infinity();

    // calibrate L_emp so the stated bound covers every measured ratio
    for (const auto& pt : pts) {
        const double scale_factor = std::isfinite(report.q_emp)
                                        ? std::pow(pt.delta, 1.0 / report.q_emp)
                                        : 1.0;
        report.L_emp = std::max(report.L_emp, pt.max_ratio * scale_factor);
    }
    return report;
}

}  // namespace spinscale

#include "spinscale/picard.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "spinscale/parallel.hpp"

namespace spinscale {

ProcessEnsemble apply_T(const ProcessEnsemble& ens, const WeightedSpinVector& u0,
                        const InteractionFamily& drift, const InteractionFamily& diffusion,
                        const NeighborStructure& ns, const NoiseBundle& noise) {
    require_same_config(ens.config(), ns.config);
    require_same_config(ens.config(), u0.config());
    const TimeGrid& grid = ens.grid();
    if (noise.replica_count() != ens.replica_count() || noise.n_steps() != grid.n_steps ||
        noise.n_sites() != ens.config()->site_count())
        throw std::invalid_argument("noise bundle does not match the ensemble");

    const auto& cfg = *ns.config;
    const int n_sites = cfg.site_count();
    const double dt = grid.dt();
    ProcessEnsemble out(ens.config(), grid, ens.replica_count());

    // running prefix sums; bit-identical to the Euler-Maruyama update when the
    // input ensemble is the fixed point
    parallel_for(ens.replica_count(), [&](int m) {
        auto first = out.state(m, 0);
        std::copy(u0.values().begin(), u0.values().end(), first.begin());
        for (int k = 0; k < grid.n_steps; ++k) {
            auto in_cur = ens.state(m, k);
            auto out_cur = out.state(m, k);
            auto out_next = out.state(m, k + 1);
            for (int x = 0; x < n_sites; ++x) {
                double f = 0, b = 0;
                for (int y : ns.adjacency[x]) {
                    const double d = cfg.distance(x, y);
                    f += drift.pair(d, in_cur[x], in_cur[y]);
                    b += diffusion.pair(d, in_cur[x], in_cur[y]);
                }
                const double v = out_cur[x] + f * dt + b * noise.increment(m, k, x);
                if (!std::isfinite(v)) throw IntegrationDiverged(m, k);
                out_next[x] = v;
            }
        }
    });
    return out;
}

PicardResult picard_iterate_from(ProcessEnsemble start, const WeightedSpinVector& u0,
                                 const InteractionFamily& drift,
                                 const InteractionFamily& diffusion, const NeighborStructure& ns,
                                 const NoiseBundle& noise, const ScaleInterval& scale, double p,
                                 int n_max, double tol) {
    scale.validate();
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    if (!(tol > 0)) throw std::invalid_argument("tol must be > 0");

    PicardDiagnostics diag;
    diag.betas = scale.grid;

    ProcessEnsemble current = std::move(start);
    for (int n = 0; n < n_max; ++n) {
        ProcessEnsemble next = apply_T(current, u0, drift, diffusion, ns, noise);
        std::vector<ZpNormEstimate> dists;
        dists.reserve(scale.grid.size());
        for (double beta : scale.grid) dists.push_back(zp_distance(current, next, beta, p));
        const double d_top = dists.back().value;
        diag.distances.push_back(std::move(dists));
        diag.iterations = n + 1;
        current = std::move(next);
        if (d_top <= tol) {
            diag.converged = true;
            break;
        }
    }

    ProcessEnsemble fixed_check = apply_T(current, u0, drift, diffusion, ns, noise);
    for (double beta : scale.grid)
        diag.residual.push_back(zp_distance(current, fixed_check, beta, p));
    return {std::move(current), std::move(diag)};
}

PicardResult picard_iterate(const WeightedSpinVector& u0, const InteractionFamily& drift,
                            const InteractionFamily& diffusion, const NeighborStructure& ns,
                            const TimeGrid& grid, const NoiseBundle& noise,
                            const ScaleInterval& scale, double p, int n_max, double tol) {
    return picard_iterate_from(ProcessEnsemble::constant(u0, grid, noise.replica_count()), u0,
                               drift, diffusion, ns, noise, scale, p, n_max, tol);
}

UniquenessReport uniqueness_probe(const WeightedSpinVector& u0, const ProcessEnsemble& alt_start,
                                  const InteractionFamily& drift,
                                  const InteractionFamily& diffusion, const NeighborStructure& ns,
                                  const TimeGrid& grid, const NoiseBundle& noise,
                                  const ScaleInterval& scale, double p, int n_max, double tol) {
    auto main_run = picard_iterate(u0, drift, diffusion, ns, grid, noise, scale, p, n_max, tol);
    auto alt_run = picard_iterate_from(alt_start, u0, drift, diffusion, ns, noise, scale, p,
                                       n_max, tol);
    UniquenessReport report;
    report.betas = scale.grid;
    report.both_converged = main_run.diagnostics.converged && alt_run.diagnostics.converged;
    for (double beta : scale.grid)
        report.z_distance.push_back(zp_distance(main_run.limit, alt_run.limit, beta, p));
    return report;
}

std::vector<ContractionRow> contraction_report(const PicardDiagnostics& diag,
                                               const ContractionConstants& constants) {
    if (diag.distances.empty()) throw std::invalid_argument("empty diagnostics");
    const double delta = diag.betas.back() - diag.betas.front();
    const double d0_base = diag.distances.front().front().value;  // d_0 at alpha_*

    std::vector<ContractionRow> rows;
    for (std::size_t n = 0; n < diag.distances.size(); ++n) {
        ContractionRow row;
        row.n = static_cast<int>(n);
        const auto& est = diag.distances[n].back();  // top grid index
        row.measured = est.value;
        row.std_error = est.std_error;
        row.bound = n == 0 ? d0_base
                           : picard_bound(static_cast<int>(n), constants.p, constants.q, delta,
                                          constants.L, constants.T) *
                                 d0_base;
        if (row.bound > 0) {
            row.ratio = row.measured / row.bound;
            row.flagged = row.ratio > 1.0 + 3.0 * row.std_error / row.bound;
        } else {
            row.ratio = row.measured > 0 ? std::numeric_limits<double>::infinity() : 0.0;
            row.flagged = row.measured > 3.0 * row.std_error;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace spinscale

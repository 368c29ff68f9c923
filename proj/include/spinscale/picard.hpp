#pragma once

#include <vector>

#include "spinscale/estimates.hpp"
#include "spinscale/sde.hpp"

namespace spinscale {

struct PicardDiagnostics {
    std::vector<double> betas;  // the scale grid the distances are reported on
    // distances[n][b] = Z-distance between iterates n and n+1 at betas[b]
    std::vector<std::vector<ZpNormEstimate>> distances;
    std::vector<ZpNormEstimate> residual;  // || xi_fix - T(xi_fix) ||, per beta
    bool converged = false;
    int iterations = 0;
};

// One application of the interval map on an ensemble: left-point Riemann and
// Ito sums driven by the common noise bundle. output(t_0) = u0 exactly.
ProcessEnsemble apply_T(const ProcessEnsemble& ens, const WeightedSpinVector& u0,
                        const InteractionFamily& drift, const InteractionFamily& diffusion,
                        const NeighborStructure& ns, const NoiseBundle& noise);

struct PicardResult {
    ProcessEnsemble limit;
    PicardDiagnostics diagnostics;
};

// Iterates T from the constant process xi == u0 until the distance between
// consecutive iterates at the top grid index falls below tol (or n_max).
PicardResult picard_iterate(const WeightedSpinVector& u0, const InteractionFamily& drift,
                            const InteractionFamily& diffusion, const NeighborStructure& ns,
                            const TimeGrid& grid, const NoiseBundle& noise,
                            const ScaleInterval& scale, double p, int n_max, double tol);

// Same, but from an arbitrary start iterate.
PicardResult picard_iterate_from(ProcessEnsemble start, const WeightedSpinVector& u0,
                                 const InteractionFamily& drift,
                                 const InteractionFamily& diffusion, const NeighborStructure& ns,
                                 const NoiseBundle& noise, const ScaleInterval& scale, double p,
                                 int n_max, double tol);

struct UniquenessReport {
    std::vector<double> betas;
    std::vector<ZpNormEstimate> z_distance;  // between the two limits, per beta
    bool both_converged = false;
};

UniquenessReport uniqueness_probe(const WeightedSpinVector& u0, const ProcessEnsemble& alt_start,
                                  const InteractionFamily& drift,
                                  const InteractionFamily& diffusion, const NeighborStructure& ns,
                                  const TimeGrid& grid, const NoiseBundle& noise,
                                  const ScaleInterval& scale, double p, int n_max, double tol);

struct ContractionRow {
    int n = 0;
    double measured = 0;
    double std_error = 0;
    double bound = 0;  // picard_bound(n) at (top beta - alpha_*) times measured d_0(alpha_*)
    double ratio = 0;
    bool flagged = false;  // measured exceeds bound beyond 3 standard errors
};

// Measured one-step differences at the top grid index against the n-step
// theoretical bound anchored at alpha_*.
std::vector<ContractionRow> contraction_report(const PicardDiagnostics& diag,
                                               const ContractionConstants& constants);

}  // namespace spinscale

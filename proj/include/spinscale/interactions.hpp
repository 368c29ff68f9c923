#pragma once

#include <cstdint>
#include <string>

#include "spinscale/point_process.hpp"
#include "spinscale/scale.hpp"

namespace spinscale {

enum class InteractionKind { clipped_linear, tanh_coupling };

std::string to_string(InteractionKind kind);
InteractionKind interaction_kind_from_string(const std::string& name);

/// Finite-range pair interaction V_xy(a, b) = J w(|x-y|) g(b - a) with the
/// linear cutoff profile w(s) = (1 - s/r)_+ and g = clamp or tanh. Both
/// built-ins are uniformly Lipschitz with constant |J|.
struct InteractionFamily {
    InteractionKind kind = InteractionKind::clipped_linear;
    double r = 1.0;         // interaction range; V == 0 for |x-y| >= r
    double coupling = 0.0;  // J
    double lipschitz_C = 0.0;

    InteractionFamily() = default;
    InteractionFamily(InteractionKind kind_, double r_, double coupling_);

    double profile(double dist) const;           // w(s), supported on [0, r)
    double pair(double dist, double a, double b) const;
};

struct GLProfile {
    double q = 0;  // Ovsyannikov exponent
    double L = 0;  // scale Lipschitz constant
    double K = 0;  // linear-growth constant
};

// Drift map: component at x is the sum of V_xy(sigma_x, sigma_y) over the
// radius-r neighbors of x.
WeightedSpinVector drift_field(const InteractionFamily& V, const WeightedSpinVector& sigma,
                               const NeighborStructure& ns);

// Diagonal of the diffusion operator; its Hilbert-Schmidt norm into X_beta is
// the beta-weighted norm of this vector.
WeightedSpinVector diffusion_field(const InteractionFamily& V, const WeightedSpinVector& sigma,
                                   const NeighborStructure& ns);

struct AdmissibilityReport {
    double C_emp = 0;
    bool range_ok = true;
    bool within_declared = true;  // C_emp <= declared lipschitz_C
};

AdmissibilityReport admissibility_check(const InteractionFamily& V, int n_samples,
                                        std::uint64_t seed);

enum class MapKind { drift, diffusion };

struct GLFitReport {
    double L_emp = 0;
    double q_emp = 0;   // +inf when the measured ratios do not grow as beta -> alpha
    double slope = 0;   // fitted 1/q_emp
    bool zero_map = false;
};

// Empirical scale-Lipschitz fit: for random vector pairs and every (alpha,
// beta) grid pair, the max ratio ||F(u)-F(v)||_beta / ||u-v||_alpha; slope of
// log max-ratio against -log(beta-alpha). L_emp is calibrated so that every
// measured ratio satisfies ratio <= L_emp (beta-alpha)^{-1/q_emp}.
GLFitReport gl_exponent_fit(MapKind map_kind, const InteractionFamily& V, const ConfigPtr& config,
                            const NeighborStructure& ns, const ScaleInterval& scale, int n_pairs,
                            std::uint64_t seed);

}  // namespace spinscale

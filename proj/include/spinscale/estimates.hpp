#pragma once

#include <cstdint>

#include "spinscale/sde.hpp"

namespace spinscale {

/// The closed-form contraction constants for the interval map at horizon T.
struct ContractionConstants {
    double p = 2;
    double q = 4;
    double L = 1;
    double T = 1;
    double hat_L = 0;
    double a_T = 0;
    double theta = 0;  // 1/q
};

ContractionConstants make_contraction_constants(double p, double q, double L, double T);

// (T^{p-1} + [p(p-1)/2]^p T^{p/2-1}) 2^{p-1} L^p
double hat_L(double p, double L, double T);

// a_p L T for T >= 1, a_p L sqrt(T) for T < 1, with
// a_p = 2^{p-1}((p/2)^{p/2}(p-1) + 1); dominates (hat_L(T) T)^{1/p}.
double a_T(double p, double L, double T);

struct ESeriesResult {
    double value = 1;
    int terms = 0;
};

// 1 + sum_{n>=1} t^n eps^{-theta n} n^{theta n} (n!)^{-1/p}, truncated once
// the term ratio drops below 1/2 and the geometric tail bound is < tail_tol.
// Requires theta < 1/p (convergence hypothesis); refuses otherwise.
ESeriesResult e_series(double t, double eps, double theta, double p, double tail_tol);

// p-th root of (n^{np/q}/n!) (hat_L(T) T / delta^{p/q})^n, evaluated in the
// log domain; n = 0 gives 1.
double picard_bound(int n, double p, double q, double delta, double L, double T);

// E^{(p)}((hat_L T)^{1/p}, delta, 1/q) (1 + u0_norm)^p; requires q > p.
double growth_bound(double p, double q, double L, double T, double delta, double u0_norm,
                    double tail_tol = 1e-12);

struct KolmogorovReport {
    bool degenerate = false;
    double slope = 0;   // of log E||xi(t)-xi(s)||^p against log|t-s|
    double k_emp = 0;   // max over pairs of moment / |t-s|^{p/2}
    int pairs_used = 0;
};

KolmogorovReport kolmogorov_fit(const ProcessEnsemble& ens, double beta, double p,
                                int pair_budget, std::uint64_t seed = 0x6b6f6c6dULL);

}  // namespace spinscale

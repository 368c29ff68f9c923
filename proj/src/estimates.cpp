#include "spinscale/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spinscale/rng.hpp"

namespace spinscale {

namespace {

void check_pLT(double p, double L, double T) {
    if (!(p >= 2)) throw std::invalid_argument("p must be >= 2");
    if (!(L >= 0)) throw std::invalid_argument("L must be >= 0");
    if (!(T > 0)) throw std::invalid_argument("T must be > 0");
}

}  // namespace

double hat_L(double p, double L, double T) {
    check_pLT(p, L, T);
    const double ito = std::pow(p / 2.0 * (p - 1.0), p);
    return (std::pow(T, p - 1.0) + ito * std::pow(T, p / 2.0 - 1.0)) * std::pow(2.0, p - 1.0) *
           std::pow(L, p);
}

double a_T(double p, double L, double T) {
    check_pLT(p, L, T);
    const double a_p = std::pow(2.0, p - 1.0) * (std::pow(p / 2.0, p / 2.0) * (p - 1.0) + 1.0);
    return T >= 1.0 ? a_p * L * T : a_p * L * std::sqrt(T);
}

ContractionConstants make_contraction_constants(double p, double q, double L, double T) {
    if (!(q > p)) throw std::invalid_argument("contraction constants require p < q");
    ContractionConstants c;
    c.p = p;
    c.q = q;
    c.L = L;
    c.T = T;
    c.hat_L = hat_L(p, L, T);
    c.a_T = a_T(p, L, T);
    c.theta = 1.0 / q;
    return c;
}

ESeriesResult e_series(double t, double eps, double theta, double p, double tail_tol) {
    if (!(t >= 0)) throw std::invalid_argument("t must be >= 0");
    if (!(eps > 0)) throw std::invalid_argument("eps must be > 0");
    if (!(p > 0)) throw std::invalid_argument("p must be > 0");
    if (!(tail_tol > 0)) throw std::invalid_argument("tail_tol must be > 0");
    if (!(theta >= 0) || theta >= 1.0 / p)
        throw std::domain_error("e_series requires 0 <= theta < 1/p");

    ESeriesResult res;
    if (t == 0) return res;

    const double log_base = std::log(t) - theta * std::log(eps);
    double prev_log_term = 0;
    for (int n = 1; n <= 200000; ++n) {
        const double log_term =
            n * log_base + theta * n * std::log(static_cast<double>(n)) - std::lgamma(n + 1.0) / p;
        const double term = std::exp(log_term);
        res.value += term;
        res.terms = n;
        if (n > 1) {
            const double ratio = std::exp(log_term - prev_log_term);
            if (ratio < 0.5 && term * ratio / (1.0 - ratio) < tail_tol) break;
        }
        prev_log_term = log_term;
    }
    return res;
}

double picard_bound(int n, double p, double q, double delta, double L, double T) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (!(delta > 0)) throw std::invalid_argument("delta must be > 0");
    if (!(q > p)) throw std::invalid_argument("picard_bound requires q > p");
    if (n == 0) return 1.0;
    const double hl = hat_L(p, L, T);
    if (hl == 0) return 0.0;
    const double log_pth_power = n * (p / q) * std::log(static_cast<double>(n)) -
                                 std::lgamma(n + 1.0) +
                                 n * (std::log(hl) + std::log(T) - (p / q) * std::log(delta));
    return std::exp(log_pth_power / p);
}

double growth_bound(double p, double q, double L, double T, double delta, double u0_norm,
                    double tail_tol) {
    if (!(q > p)) throw std::domain_error("growth_bound requires q > p");
    if (!(u0_norm >= 0)) throw std::invalid_argument("u0_norm must be >= 0");
    const double t = std::pow(hat_L(p, L, T) * T, 1.0 / p);
    const double e_val = e_series(t, delta, 1.0 / q, p, tail_tol).value;
    return e_val * std::pow(1.0 + u0_norm, p);
}

KolmogorovReport kolmogorov_fit(const ProcessEnsemble& ens, double beta, double p,
                                int pair_budget, std::uint64_t seed) {
    const int n_times = ens.grid().n_times();
    if (n_times < 8) throw std::invalid_argument("kolmogorov_fit needs >= 8 grid times");
    if (pair_budget < 2) throw std::invalid_argument("pair_budget must be >= 2");

    rng::Stream stream(rng::derive_seed(seed, "kolmogorov-pairs"));
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(pair_budget);
    for (int i = 0; i < pair_budget; ++i) {
        int s = static_cast<int>(stream.uniform() * n_times) % n_times;
        int t = static_cast<int>(stream.uniform() * n_times) % n_times;
        if (s == t) continue;
        pairs.emplace_back(std::min(s, t), std::max(s, t));
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    KolmogorovReport report;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (const auto& [s, t] : pairs) {
        const double moment = increment_moment(ens, s, t, beta, p);
        if (moment <= 0) continue;
        const double gap = ens.grid().time(t) - ens.grid().time(s);
        const double x = std::log(gap);
        const double y = std::log(moment);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
        report.k_emp = std::max(report.k_emp, moment / std::pow(gap, p / 2.0));
    }
    report.pairs_used = count;
    if (count < 2) {
        report.degenerate = true;
        return report;
    }
    const double det = count * sxx - sx * sx;
    if (det == 0) {
        report.degenerate = true;
        return report;
    }
    report.slope = (count * sxy - sx * sy) / det;
    return report;
}

}  // namespace spinscale

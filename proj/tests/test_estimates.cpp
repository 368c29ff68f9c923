#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "doctest.h"
#include "spinscale/estimates.hpp"

using namespace spinscale;

namespace {

using mp50 = boost::multiprecision::cpp_bin_float_50;

// Independent 50-digit evaluation of the majorant series, direct term
// recursion with no log-domain tricks.
double e_series_oracle(double t, double eps, double theta, double p) {
    if (t == 0) return 1.0;
    const mp50 mt = t, meps = eps, mtheta = theta, mp = p;
    mp50 sum = 1;
    for (int n = 1; n <= 400000; ++n) {
        const mp50 mn = n;
        const mp50 term = pow(mt, mn) * pow(meps, -mtheta * mn) * pow(mn, mtheta * mn) /
                          pow(boost::multiprecision::tgamma(mn + 1), 1 / mp);
        sum += term;
        if (term < mp50("1e-40") * sum) break;
    }
    return sum.convert_to<double>();
}

}  // namespace

TEST_CASE("closed-form contraction constants at p = 2") {
    CHECK(hat_L(2, 1, 1) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(hat_L(2, 1, 4) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(hat_L(2, 0.5, 1) == doctest::Approx(1.0).epsilon(1e-14));  // scales like L^p
    CHECK(a_T(2, 1, 1) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(a_T(2, 1, 0.25) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("hat_L from an independent high-precision evaluation") {
    for (double p : {2.0, 3.0, 4.0}) {
        for (double T : {0.1, 0.5, 1.0, 2.0, 10.0}) {
            const double L = 0.7;
            const mp50 mpv = p, mT = T, mL = L;
            const mp50 expect = (pow(mT, mpv - 1) + pow(mpv / 2 * (mpv - 1), mpv) *
                                                        pow(mT, mpv / 2 - 1)) *
                                pow(mp50(2), mpv - 1) * pow(mL, mpv);
            CHECK(hat_L(p, L, T) ==
                  doctest::Approx(expect.convert_to<double>()).epsilon(1e-12));
        }
    }
}

TEST_CASE("interval constant dominates the per-step constant") {
    for (double p : {2.0, 3.0, 4.0})
        for (double L : {0.1, 0.5, 1.0, 2.0})
            for (double T : {0.05, 0.25, 1.0, 3.0, 8.0})
                CHECK(std::pow(hat_L(p, L, T) * T, 1.0 / p) <= a_T(p, L, T) * (1 + 1e-12));
}

TEST_CASE("majorant series reduces to the exponential at theta = 0, p = 1") {
    for (double t : {0.1, 0.7, 1.0, 2.5}) {
        auto res = e_series(t, 1.0, 0.0, 1.0, 1e-14);
        CHECK(res.value == doctest::Approx(std::exp(t)).epsilon(1e-12));
    }
}

TEST_CASE("majorant series against the 50-digit oracle") {
    // parameter box chosen so the sum stays far from double overflow; the
    // weakly damped corner (theta near 1/p with small eps) peaks beyond 1e300
    // and is exercised separately below
    for (double p : {2.0, 3.0}) {
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
            for (double theta : {0.0, 0.2}) {
                for (double eps : {1.0, 1.5}) {
                    const double expect = e_series_oracle(t, eps, theta, p);
                    const double got = e_series(t, eps, theta, p, 1e-14).value;
                    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
                }
            }
        }
    }
    const double expect = e_series_oracle(1.0, 0.25, 0.2, 2.0);
    CHECK(e_series(1.0, 0.25, 0.2, 2.0, 1e-14).value ==
          doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("majorant series refuses the divergent regime") {
    CHECK_THROWS_AS(e_series(1.0, 1.0, 0.5, 2.0, 1e-12), std::domain_error);
    CHECK_THROWS_AS(e_series(1.0, 1.0, 0.6, 2.0, 1e-12), std::domain_error);
}

TEST_CASE("majorant series is monotone in t and in 1/eps") {
    const double a = e_series(0.5, 1.0, 0.2, 2.0, 1e-12).value;
    const double b = e_series(1.0, 1.0, 0.2, 2.0, 1e-12).value;
    const double c = e_series(1.0, 0.5, 0.2, 2.0, 1e-12).value;
    CHECK(a < b);
    CHECK(b < c);
}

TEST_CASE("iterate bound values by hand") {
    CHECK(picard_bound(0, 2, 4, 1.0, 1, 1) == 1.0);
    // n = 1: ((1 * hat_L T / delta^{p/q}))^{1/p} with hat_L = 4 -> 2.
    CHECK(picard_bound(1, 2, 4, 1.0, 1, 1) == doctest::Approx(2.0).epsilon(1e-13));
    // delta^{p/q} scaling: delta = 1/4 multiplies the p-th power by 2.
    CHECK(picard_bound(1, 2, 4, 0.25, 1, 1) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("iterate bound decays factorially") {
    double prev = picard_bound(5, 2, 4, 1.5, 0.3, 1);
    bool shrinking = true;
    for (int n = 6; n <= 60; ++n) {
        const double cur = picard_bound(n, 2, 4, 1.5, 0.3, 1);
        if (n > 20) shrinking = shrinking && cur < prev;
        prev = cur;
    }
    CHECK(shrinking);
    CHECK(picard_bound(60, 2, 4, 1.5, 0.3, 1) < 1e-12);
}

TEST_CASE("iterate bound against a 50-digit oracle") {
    for (int n : {1, 3, 7, 15}) {
        const mp50 p = 2, q = 4, delta = mp50("0.7"), T = mp50("1.5");
        const mp50 hl = hat_L(2, 0.4, 1.5);
        const mp50 mn = n;
        const mp50 pth = pow(mn, mn * p / q) / boost::multiprecision::tgamma(mn + 1) *
                         pow(hl * T / pow(delta, p / q), mn);
        const double expect = pow(pth, 1 / p).convert_to<double>();
        CHECK(picard_bound(n, 2, 4, 0.7, 0.4, 1.5) ==
              doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("growth bound composes the series with the initial norm") {
    const double p = 2, q = 4, L = 0.3, T = 1.0, delta = 1.5, u0 = 2.0;
    const double t = std::pow(hat_L(p, L, T) * T, 1.0 / p);
    const double expect = e_series_oracle(t, delta, 1.0 / q, p) * std::pow(1.0 + u0, p);
    CHECK(growth_bound(p, q, L, T, delta, u0) == doctest::Approx(expect).epsilon(1e-11));
    CHECK_THROWS_AS(growth_bound(2, 2, L, T, delta, u0), std::domain_error);
}

TEST_CASE("continuity fit recovers the Brownian exponent") {
    // Single free site driven directly by its Brownian path: the p = 2 moment
    // of an increment is exactly the time gap, slope 1, k_emp about 1.
    auto cfg = explicit_configuration(1, 5.0, {0.0});
    TimeGrid grid{1.0, 64};
    const int M = 512;
    auto noise = generate_noise(cfg, grid, M, 314);
    ProcessEnsemble ens(cfg, grid, M);
    for (int m = 0; m < M; ++m) {
        double w = 0;
        ens.state(m, 0)[0] = 0;
        for (int k = 0; k < 64; ++k) {
            w += noise.increment(m, k, 0);
            ens.state(m, k + 1)[0] = w;
        }
    }
    auto rep = kolmogorov_fit(ens, 0.0, 2.0, 48);
    CHECK(!rep.degenerate);
    CHECK(rep.pairs_used >= 10);
    CHECK(rep.slope == doctest::Approx(1.0).epsilon(0.15));
    CHECK(rep.k_emp == doctest::Approx(1.0).epsilon(0.35));
}

TEST_CASE("continuity fit reports a frozen ensemble as degenerate") {
    auto cfg = explicit_configuration(1, 5.0, {0.0});
    auto ens = ProcessEnsemble::constant(WeightedSpinVector::constant(cfg, 1.0),
                                         TimeGrid{1.0, 16}, 8);
    auto rep = kolmogorov_fit(ens, 0.0, 2.0, 32);
    CHECK(rep.degenerate);
    CHECK(rep.k_emp == 0.0);
}

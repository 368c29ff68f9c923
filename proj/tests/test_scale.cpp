#include <cmath>
#include <vector>

#include "doctest.h"
#include "spinscale/rng.hpp"
#include "spinscale/scale.hpp"
#include "spinscale/sde.hpp"

using namespace spinscale;

namespace {

ConfigPtr three_sites() {
    return explicit_configuration(1, 10.0, {0.0, 1.0, -2.0});
}

}  // namespace

TEST_CASE("single site norm is the exponential weight") {
    auto cfg = explicit_configuration(1, 5.0, {1.0});
    WeightedSpinVector v(cfg, {3.0});
    CHECK(weighted_norm(v, 2.0) == doctest::Approx(3.0 * std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("norm matches the brute-force sum") {
    auto cfg = three_sites();
    WeightedSpinVector v(cfg, {1.5, -2.0, 0.5});
    const double alpha = 0.7;
    double acc = 0;
    for (int i = 0; i < 3; ++i)
        acc += v[i] * v[i] * std::exp(-alpha * std::abs(cfg->position(i)[0]));
    CHECK(weighted_norm(v, alpha) == doctest::Approx(std::sqrt(acc)).epsilon(1e-14));
}

TEST_CASE("norm is non-increasing in the scale index") {
    auto cfg = sample_poisson(1, 20.0, 1.0, 3);
    rng::Stream st(99);
    std::vector<double> vals(cfg->site_count());
    for (auto& x : vals) x = st.normal();
    WeightedSpinVector v(cfg, vals);
    double prev = weighted_norm(v, 0.1);
    for (double alpha : {0.5, 1.0, 1.7, 2.5}) {
        const double cur = weighted_norm(v, alpha);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
}

TEST_CASE("norm is absolutely homogeneous and satisfies the triangle inequality") {
    auto cfg = three_sites();
    WeightedSpinVector u(cfg, {1.0, 2.0, -1.0});
    WeightedSpinVector v(cfg, {0.5, -1.0, 3.0});
    CHECK(weighted_norm(-2.5 * u, 1.0) == doctest::Approx(2.5 * weighted_norm(u, 1.0)));
    CHECK(weighted_norm(u + v, 1.0) <= weighted_norm(u, 1.0) + weighted_norm(v, 1.0) + 1e-14);
    CHECK(weighted_norm(WeightedSpinVector::zero(cfg), 1.0) == 0.0);
}

TEST_CASE("negative scale index is refused") {
    auto cfg = three_sites();
    WeightedSpinVector v(cfg, {1.0, 1.0, 1.0});
    CHECK_THROWS_AS(weighted_norm(v, -0.5), std::invalid_argument);
}

TEST_CASE("mixing vectors over different configurations is refused") {
    WeightedSpinVector a(three_sites(), {1.0, 1.0, 1.0});
    WeightedSpinVector b(three_sites(), {1.0, 1.0, 1.0});
    // Same coordinates, distinct objects: identity is by configuration object.
    CHECK_THROWS_AS(a += b, ConfigMismatch);
}

TEST_CASE("scale interval grid is uniform and validated") {
    auto sc = ScaleInterval::uniform(0.5, 2.0, 4);
    REQUIRE(sc.grid.size() == 4);
    CHECK(sc.grid.front() == doctest::Approx(0.5));
    CHECK(sc.top() == doctest::Approx(2.0));
    CHECK(sc.grid[1] == doctest::Approx(1.0));
    CHECK_THROWS_AS(ScaleInterval::uniform(2.0, 0.5, 4).validate(), std::invalid_argument);
}

TEST_CASE("z-norm estimate against a hand-computed ensemble") {
    auto cfg = explicit_configuration(1, 5.0, {0.0, 1.0});
    TimeGrid grid{1.0, 2};
    ProcessEnsemble ens(cfg, grid, 3);
    // values[m][k][x]
    const double vals[3][3][2] = {{{1, 0}, {2, 0}, {0, 1}},
                                  {{0, 1}, {1, 1}, {2, 2}},
                                  {{1, 1}, {0, 0}, {3, 0}}};
    for (int m = 0; m < 3; ++m)
        for (int k = 0; k < 3; ++k)
            for (int x = 0; x < 2; ++x) ens.state(m, k)[x] = vals[m][k][x];
    const double alpha = 0.3, p = 2.0;
    double best = 0;
    double best_t = 0;
    for (int k = 0; k < 3; ++k) {
        double mean = 0;
        for (int m = 0; m < 3; ++m) {
            double sq = 0;
            for (int x = 0; x < 2; ++x)
                sq += vals[m][k][x] * vals[m][k][x] * std::exp(-alpha * cfg->radius(x));
            mean += sq;
        }
        mean /= 3;
        if (mean > best) { best = mean; best_t = grid.time(k); }
    }
    auto est = zp_norm_estimate(ens, alpha, p);
    CHECK(est.value == doctest::Approx(std::pow(best, 1.0 / p)).epsilon(1e-14));
    CHECK(est.t_sup == doctest::Approx(best_t));
    CHECK(est.p == p);
    CHECK(est.std_error > 0);
}

TEST_CASE("z-norm of a constant ensemble is the vector norm, zero error") {
    auto cfg = three_sites();
    auto u0 = WeightedSpinVector::constant(cfg, 2.0);
    auto ens = ProcessEnsemble::constant(u0, TimeGrid{1.0, 4}, 5);
    auto est = zp_norm_estimate(ens, 1.0, 3.0);
    CHECK(est.value == doctest::Approx(weighted_norm(u0, 1.0)).epsilon(1e-12));
    CHECK(est.std_error == doctest::Approx(0.0));
}

TEST_CASE("z-distance of identical ensembles vanishes") {
    auto cfg = three_sites();
    auto ens = ProcessEnsemble::constant(WeightedSpinVector::constant(cfg, 1.0), TimeGrid{1.0, 2}, 4);
    auto d = zp_distance(ens, ens, 0.5, 2.0);
    CHECK(d.value == 0.0);
}

TEST_CASE("moment order below 2 is refused") {
    auto cfg = three_sites();
    auto ens = ProcessEnsemble::constant(WeightedSpinVector::constant(cfg, 1.0), TimeGrid{1.0, 2}, 2);
    CHECK_THROWS_AS(zp_norm_estimate(ens, 0.5, 1.5), std::invalid_argument);
}

TEST_CASE("single replica estimate is well defined") {
    auto cfg = three_sites();
    auto ens = ProcessEnsemble::constant(WeightedSpinVector::constant(cfg, 1.0), TimeGrid{1.0, 2}, 1);
    auto est = zp_norm_estimate(ens, 0.5, 2.0);
    CHECK(est.value > 0);
    CHECK(est.std_error == 0.0);  // no spread estimate from one replica
}

TEST_CASE("non-finite values are rejected at construction") {
    auto cfg = three_sites();
    CHECK_THROWS_AS(WeightedSpinVector(cfg, {1.0, std::nan(""), 0.0}), std::invalid_argument);
}

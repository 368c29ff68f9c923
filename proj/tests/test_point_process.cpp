#include <cmath>
#include <set>

#include "doctest.h"
#include "spinscale/point_process.hpp"
#include "test_helpers.hpp"

using namespace spinscale;

TEST_CASE("poisson sample stays in box and is reproducible") {
    auto cfg = sample_poisson(2, 10.0, 0.5, 7);
    CHECK(cfg->site_count() > 0);
    for (int i = 0; i < cfg->site_count(); ++i) {
        auto x = cfg->position(i);
        for (double c : x) CHECK(std::abs(c) <= 10.0);
    }
    auto cfg2 = sample_poisson(2, 10.0, 0.5, 7);
    REQUIRE(cfg2->site_count() == cfg->site_count());
    for (int i = 0; i < cfg->site_count(); ++i)
        for (int k = 0; k < 2; ++k) CHECK(cfg->position(i)[k] == cfg2->position(i)[k]);
}

TEST_CASE("poisson mean count tracks intensity times volume") {
    // |[-R,R]^1| = 20, intensity 2 -> mean 40; average over seeds should land
    // within 5 sigma / sqrt(n_seeds) of that.
    const int n_seeds = 200;
    double total = 0;
    for (int s = 0; s < n_seeds; ++s) total += sample_poisson(1, 10.0, 2.0, 1000 + s)->site_count();
    const double mean = total / n_seeds;
    const double se = std::sqrt(40.0 / n_seeds);
    CHECK(std::abs(mean - 40.0) < 5 * se);
}

TEST_CASE("hard-core sample respects the exclusion radius") {
    auto cfg = sample_hardcore(2, 8.0, 1.0, 0.7, 11);
    CHECK(cfg->site_count() > 0);
    for (int i = 0; i < cfg->site_count(); ++i)
        for (int j = i + 1; j < cfg->site_count(); ++j) CHECK(cfg->distance(i, j) >= 0.7);
}

TEST_CASE("lattice neighbor counts are exact") {
    auto cfg = lattice_configuration(1, 5.0, 1.0);  // integer points -5..5
    REQUIRE(cfg->site_count() == 11);
    auto ns = build_neighbors(cfg, 1.5);
    for (int i = 0; i < 11; ++i) {
        const bool boundary = cfg->radius(i) == 5.0;
        CHECK(ns.n[i] == (boundary ? 1 : 2));
    }
    // N_y sums the neighbor counts over the neighbors of y; interior sites
    // away from the second-to-boundary layer see 2 + 2.
    for (int i = 0; i < 11; ++i) {
        long long expect = 0;
        for (int j : ns.adjacency[i]) expect += ns.n[j];
        CHECK(ns.big_n[i] == expect);
    }
}

TEST_CASE("cell-list adjacency matches the quadratic oracle") {
    for (int dim : {1, 2, 3}) {
        auto cfg = sample_poisson(dim, 6.0, dim == 3 ? 0.3 : 1.0, 90 + dim);
        for (double r : {0.4, 1.3, 2.6}) {
            auto ns = build_neighbors(cfg, r);
            auto oracle = testing::brute_force_adjacency(*cfg, r);
            REQUIRE(ns.adjacency.size() == oracle.size());
            for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(ns.adjacency[i] == oracle[i]);
        }
    }
}

TEST_CASE("adjacency is symmetric and self-free") {
    auto cfg = sample_poisson(2, 7.0, 0.8, 5);
    auto ns = build_neighbors(cfg, 1.5);
    for (int i = 0; i < cfg->site_count(); ++i) {
        std::set<int> row(ns.adjacency[i].begin(), ns.adjacency[i].end());
        CHECK(row.count(i) == 0);
        for (int j : row) {
            std::set<int> other(ns.adjacency[j].begin(), ns.adjacency[j].end());
            CHECK(other.count(i) == 1);
        }
    }
}

TEST_CASE("regularity fit on a tight origin cluster") {
    // Five points near the origin: n_x = 4 for each, and the ratio
    // n_x / (1+|x|)^{1/q} is maximized essentially at the origin.
    std::vector<double> coords = {0.0, 0.05, -0.05, 0.1, -0.1};
    auto cfg = explicit_configuration(1, 5.0, coords);
    auto ns = build_neighbors(cfg, 1.0);
    auto fit = regularity_fit(ns, *cfg, 4.0);
    CHECK(fit.worst_site == 0);
    CHECK(fit.a_fit == doctest::Approx(4.0));  // (1+0)^{1/4} = 1
    for (int i = 0; i < cfg->site_count(); ++i)
        CHECK(ns.n[i] <= fit.a_fit * std::pow(1 + cfg->radius(i), 0.25) + 1e-12);
    CHECK(fit.c_log_fit > 0);
}

TEST_CASE("regularity fit refuses q <= 2") {
    auto cfg = lattice_configuration(1, 3.0, 1.0);
    auto ns = build_neighbors(cfg, 1.5);
    CHECK_THROWS_AS(regularity_fit(ns, *cfg, 2.0), std::invalid_argument);
}

TEST_CASE("configuration json round trip") {
    auto cfg = sample_poisson(2, 9.0, 0.5, 77);
    auto back = Configuration::from_json(cfg->to_json());
    REQUIRE(back.site_count() == cfg->site_count());
    CHECK(back.dim() == cfg->dim());
    CHECK(back.box_halfwidth() == cfg->box_halfwidth());
    CHECK(back.kind() == cfg->kind());
    CHECK(back.seed() == cfg->seed());
    for (int i = 0; i < cfg->site_count(); ++i)
        for (int k = 0; k < 2; ++k) CHECK(back.position(i)[k] == cfg->position(i)[k]);
}

TEST_CASE("duplicate points are rejected") {
    std::vector<double> coords = {1.0, 2.0, 1.0};
    CHECK_THROWS_AS(explicit_configuration(1, 5.0, coords), std::invalid_argument);
}

TEST_CASE("out-of-box points are rejected") {
    std::vector<double> coords = {1.0, 6.0};
    CHECK_THROWS_AS(explicit_configuration(1, 5.0, coords), std::invalid_argument);
}

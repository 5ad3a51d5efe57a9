#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "imce/contrast.hpp"
#include "imce/empirical.hpp"
#include "imce/model.hpp"

using namespace imce;

namespace {

const ThetaParams kTheta0{1.0, 20.0, 10.0, 1.0, 10.0};
const RegionS kRegion{20.0, 40.0, 0.0, 10.0};

}  // namespace

TEST_CASE("RegionS validation and auto region") {
    CHECK_THROWS_AS(RegionS(1.0, 1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(RegionS(0.0, 1.0, -0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(RegionS(0.0, 1.0, 2.0, 1.0), std::invalid_argument);

    IntervalSample s{{{0, 4}, {6, 8}}, ""};
    // centers {2, 7}, radii {2, 1}: mean radius 1.5, max radius 2
    const RegionS r = region_auto(s);
    CHECK(r.x_min == doctest::Approx(0.5));
    CHECK(r.x_max == doctest::Approx(8.5));
    CHECK(r.y_min == 0.0);
    CHECK(r.y_max == doctest::Approx(2.5));

    CHECK_THROWS_AS(region_auto(IntervalSample{{{1, 1}, {2, 2}}, ""}),
                    std::invalid_argument);
}

TEST_CASE("make_rule geometry and weights") {
    const QuadratureRule rule = make_rule(kRegion, 24, 24);
    REQUIRE(rule.nodes.size() == 576);
    REQUIRE(rule.weights.size() == 576);
    for (const auto& node : rule.nodes) {
        CHECK(node.lower <= node.upper);
        CHECK(node.center() >= 20.0);
        CHECK(node.center() <= 40.0);
        CHECK(node.radius() >= 0.0);
        CHECK(node.radius() <= 10.0);
    }
    // weights sum to 2 * area(S) (the (x,y) -> (a,b) Jacobian)
    const double total = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
    CHECK(total == doctest::Approx(2.0 * 20.0 * 10.0).epsilon(1e-12));
    CHECK_THROWS_AS(make_rule(kRegion, 1, 24), std::invalid_argument);
}

TEST_CASE("contrast_H bounds and exact-zero synthetic cache") {
    const QuadratureRule rule = make_rule(kRegion, 8, 8);
    HitCountCache cache;
    cache.nodes = rule.nodes;
    cache.counts.assign(rule.nodes.size(), 0.0);
    cache.n = 1;
    cache.nodes_fingerprint = rule.fingerprint;
    // the squared gap is at most 1, so H <= weight total
    const double H = contrast_H(kTheta0, cache, rule, WeightFn{1.0});
    CHECK(H >= 0.0);
    CHECK(H <= 400.0 + 1e-9);

    // with counts set to n * T at every node the contrast vanishes identically
    HitCountCache exact_cache = cache;
    exact_cache.n = 8;  // power of two so counts/n reproduces T exactly
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        exact_cache.counts[j] = 8.0 * hitting_exact(kTheta0, rule.nodes[j]);
    }
    CHECK(contrast_H(kTheta0, exact_cache, rule, WeightFn{1.0},
                     HittingMode::kExact) == 0.0);
}

TEST_CASE("contrast_H validates inputs") {
    const QuadratureRule rule = make_rule(kRegion, 6, 6);
    const auto s = simulate(kTheta0, 50, 1);
    auto cache = build_hit_cache(s, rule.nodes);
    CHECK_NOTHROW(contrast_H(kTheta0, cache, rule, WeightFn{1.0}));
    cache.nodes_fingerprint ^= 1;
    CHECK_THROWS_AS(contrast_H(kTheta0, cache, rule, WeightFn{1.0}),
                    std::invalid_argument);
    cache.nodes_fingerprint ^= 1;
    CHECK_THROWS_AS(contrast_H(kTheta0, cache, rule, WeightFn{0.0}),
                    std::invalid_argument);
}

TEST_CASE("contrast_H scales linearly in the weight constant") {
    const QuadratureRule rule = make_rule(kRegion, 12, 12);
    const auto s = simulate(kTheta0, 100, 21);
    const auto cache = build_hit_cache(s, rule.nodes);
    const double h1 = contrast_H(kTheta0, cache, rule, WeightFn{1.0});
    const double h3 = contrast_H(kTheta0, cache, rule, WeightFn{3.0});
    CHECK(h3 == doctest::Approx(3.0 * h1).epsilon(1e-14));
}

TEST_CASE("contrast_H is invariant under sample permutation") {
    const QuadratureRule rule = make_rule(kRegion, 12, 12);
    auto s = simulate(kTheta0, 200, 33);
    const auto cache = build_hit_cache(s, rule.nodes);
    const double h = contrast_H(kTheta0, cache, rule, WeightFn{1.0});
    std::mt19937_64 gen(4);
    std::shuffle(s.items.begin(), s.items.end(), gen);
    const auto cache_p = build_hit_cache(s, rule.nodes);
    CHECK(contrast_H(kTheta0, cache_p, rule, WeightFn{1.0}) == h);
}

TEST_CASE("contrast_H against a dense midpoint-Riemann oracle") {
    // A single observation [20, 40] is hit by every box in S, so the
    // empirical hitting function is identically 1 over the region and
    // H = 2 * dxdy-integral of (T - 1)^2.
    const QuadratureRule rule = make_rule(kRegion, 24, 24);
    IntervalSample s{{{20.0, 40.0}}, ""};
    const auto cache = build_hit_cache(s, rule.nodes);
    for (double cnt : cache.counts) CHECK(cnt == 1.0);
    const double H = contrast_H(kTheta0, cache, rule, WeightFn{1.0});

    const int m = 400;
    const double hx = 20.0 / m, hy = 10.0 / m;
    double riemann = 0.0;
    for (int i = 0; i < m; ++i) {
        const double x = 20.0 + (i + 0.5) * hx;
        for (int j = 0; j < m; ++j) {
            const double y = (j + 0.5) * hy;
            const double gap = hitting_exact(kTheta0, Interval(x - y, x + y)) - 1.0;
            riemann += gap * gap;
        }
    }
    riemann *= 2.0 * hx * hy;
    CHECK(std::abs(H - riemann) / riemann <= 1e-3);
}

TEST_CASE("limiting_N basics") {
    const QuadratureRule rule = make_rule(kRegion, 24, 24);
    CHECK(limiting_N(kTheta0, kTheta0, rule, WeightFn{1.0}) == 0.0);
    ThetaParams shifted = kTheta0;
    shifted.mu = 21.0;
    const double N = limiting_N(shifted, kTheta0, rule, WeightFn{1.0});
    CHECK(N > 1e-4);
    // symmetric in its two arguments
    CHECK(limiting_N(kTheta0, shifted, rule, WeightFn{1.0}) ==
          doctest::Approx(N).epsilon(1e-12));
}

TEST_CASE("limiting_N is stable under order doubling") {
    ThetaParams shifted = kTheta0;
    shifted.mu = 22.0;
    shifted.a0 = 0.9;
    const double n24 = limiting_N(shifted, kTheta0, make_rule(kRegion, 24, 24), WeightFn{1.0});
    const double n48 = limiting_N(shifted, kTheta0, make_rule(kRegion, 48, 48), WeightFn{1.0});
    CHECK(std::abs(n24 - n48) / n48 <= 1e-6);
}

TEST_CASE("contrast_H converges to limiting_N as n grows") {
    const QuadratureRule rule = make_rule(kRegion, 24, 24);
    const auto s = simulate(kTheta0, 100000, 55);
    const auto cache = build_hit_cache(s, rule.nodes);
    ThetaParams shifted = kTheta0;
    shifted.mu = 21.0;
    const double H = contrast_H(shifted, cache, rule, WeightFn{1.0});
    const double N = limiting_N(shifted, kTheta0, rule, WeightFn{1.0});
    // the cross term with the empirical gap is O(n^{-1/2})
    CHECK(std::abs(H - N) <= 2e-2);
    // and at the truth itself H is small
    CHECK(contrast_H(kTheta0, cache, rule, WeightFn{1.0}) <= 5e-3);
}

TEST_CASE("contrast_H has its grid minimum at the generating parameters") {
    const QuadratureRule rule = make_rule(kRegion, 24, 24);
    const auto s = simulate(kTheta0, 100000, 91);
    const auto cache = build_hit_cache(s, rule.nodes);

    double best_mu = 0.0, best_h = 1e300;
    for (double mu : {17.0, 18.5, 20.0, 21.5, 23.0}) {
        ThetaParams t = kTheta0;
        t.mu = mu;
        const double h = contrast_H(t, cache, rule, WeightFn{1.0});
        if (h < best_h) {
            best_h = h;
            best_mu = mu;
        }
    }
    CHECK(best_mu == 20.0);

    double best_a0 = 0.0;
    best_h = 1e300;
    for (double a0 : {0.6, 0.8, 1.0, 1.2, 1.4}) {
        ThetaParams t = kTheta0;
        t.a0 = a0;
        const double h = contrast_H(t, cache, rule, WeightFn{1.0});
        if (h < best_h) {
            best_h = h;
            best_a0 = a0;
        }
    }
    CHECK(best_a0 == 1.0);
}

TEST_CASE("hitting mode selection inside the contrast") {
    const QuadratureRule rule = make_rule(kRegion, 12, 12);
    const auto s = simulate(kTheta0, 100, 13);
    const auto cache = build_hit_cache(s, rule.nodes);
    const double ha = contrast_H(kTheta0, cache, rule, WeightFn{1.0}, HittingMode::kAuto);
    const double he = contrast_H(kTheta0, cache, rule, WeightFn{1.0}, HittingMode::kExact);
    CHECK(std::abs(ha - he) <= 1e-8);
    // theta with a fat left eta-tail must reject the approximation
    ThetaParams t = kTheta0;
    t.mu = 2.0;
    CHECK_THROWS_AS(contrast_H(t, cache, rule, WeightFn{1.0}, HittingMode::kApprox),
                    std::invalid_argument);
    CHECK_NOTHROW(contrast_H(t, cache, rule, WeightFn{1.0}, HittingMode::kAuto));
}

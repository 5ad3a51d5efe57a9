#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "imce/empirical.hpp"
#include "imce/model.hpp"

using namespace imce;

namespace {
const ThetaParams kTheta0{1.0, 20.0, 10.0, 1.0, 10.0};
}

TEST_CASE("empirical_hitting") {
    IntervalSample s{{{0, 1}, {2, 3}}, ""};
    CHECK(empirical_hitting(s, Interval(1.2, 2.5)) == 0.5);
    CHECK(empirical_hitting(s, Interval(0.5, 2.5)) == 1.0);
    CHECK(empirical_hitting(s, Interval(1.3, 1.7)) == 0.0);
    CHECK_THROWS_AS(empirical_hitting(IntervalSample{}, Interval(0, 1)),
                    std::invalid_argument);
}

TEST_CASE("empirical_hitting monotone in box enlargement") {
    const auto s = simulate(kTheta0, 200, 3);
    double prev = 0.0;
    for (int k = 1; k <= 6; ++k) {
        const double f = empirical_hitting(s, Interval(30.0 - 3.0 * k, 30.0 + 3.0 * k));
        CHECK(f >= prev);
        prev = f;
    }
}

TEST_CASE("build_hit_cache") {
    IntervalSample s{{{0, 1}, {2, 3}}, ""};
    const std::vector<Interval> nodes{{1.2, 2.5}, {0.5, 2.5}, {1.3, 1.7}};
    const auto cache = build_hit_cache(s, nodes);
    CHECK(cache.counts == std::vector<double>{1.0, 2.0, 0.0});
    CHECK(cache.n == 2);

    SUBCASE("permutation of the sample leaves counts unchanged") {
        IntervalSample p{{{2, 3}, {0, 1}}, ""};
        const auto cache_p = build_hit_cache(p, nodes);
        CHECK(cache_p.counts == cache.counts);
    }
}

TEST_CASE("build_hit_cache matches node-by-node recount on a simulated sample") {
    const auto s = simulate(kTheta0, 500, 12);
    std::vector<Interval> nodes;
    for (int i = 0; i < 24; ++i) {
        for (int j = 0; j < 24; ++j) {
            const double x = 20.0 + 20.0 * (i + 0.5) / 24.0;
            const double y = 10.0 * (j + 0.5) / 24.0;
            nodes.emplace_back(x - y, x + y);
        }
    }
    const auto cache = build_hit_cache(s, nodes);
    REQUIRE(cache.counts.size() == 576);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        CHECK(cache.counts[j] == 500.0 * empirical_hitting(s, nodes[j]));
    }
}

TEST_CASE("moment_init hand examples") {
    SUBCASE("two-interval case") {
        IntervalSample s{{{1, 3}, {2, 6}, {1, 3}, {2, 6}}, ""};
        // endpoint means (1.5, 4.5): mu=3, a0=0.5; A_delta identically 0
        const auto t = moment_init(s);
        CHECK(t.mu == doctest::Approx(3.0));
        CHECK(t.a0 == doctest::Approx(0.5));
        // diagonal inflation perturbs this at the 1e-8 level
        CHECK(t.s22 == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
        CHECK(t.s12 == doctest::Approx(0.0).scale(1));
        CHECK(t.valid());  // zero-variance first coordinate was inflated
        CHECK(t.s11 > 0.0);
    }
    SUBCASE("identical intervals") {
        IntervalSample s{{{2, 5}, {2, 5}, {2, 5}}, ""};
        const auto t = moment_init(s);
        CHECK(t.mu == doctest::Approx(3.0));
        CHECK(t.a0 == doctest::Approx(2.0 / 3.0));
        CHECK(t.valid());
        CHECK(t.s11 < 1e-6);
        CHECK(t.s22 < 1e-6);
    }
    SUBCASE("errors") {
        IntervalSample degenerate{{{1, 1}, {2, 2}, {3, 3}}, ""};
        CHECK_THROWS_WITH_AS(moment_init(degenerate), "moment_init: degenerate lengths",
                             std::invalid_argument);
        IntervalSample small{{{0, 1}, {0, 2}}, ""};
        CHECK_THROWS_AS(moment_init(small), std::invalid_argument);
    }
}

TEST_CASE("moment_init recovers the truth within 20% on n=500") {
    const auto s = simulate(kTheta0, 500, 2024);
    const auto t = moment_init(s);
    CHECK(std::abs(t.a0 - 1.0) <= 0.2 * 1.0);
    CHECK(std::abs(t.mu - 20.0) <= 0.2 * 20.0);
    CHECK(std::abs(t.s11 - 10.0) <= 0.2 * 10.0);
    CHECK(std::abs(t.s12 - 1.0) <= 2.0);  // cov target is small; absolute band
    CHECK(std::abs(t.s22 - 10.0) <= 0.2 * 10.0);
}

TEST_CASE("moment_init error shrinks with n") {
    auto err = [](std::size_t n) {
        double total = 0.0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto t = moment_init(simulate(kTheta0, n, seed));
            total += std::abs(t.a0 - 1.0) + std::abs(t.mu - 20.0) / 20.0;
        }
        return total;
    };
    CHECK(err(10000) < err(100));
}

TEST_CASE("moment_init translation equivariance") {
    const auto s = simulate(kTheta0, 200, 8);
    IntervalSample shifted;
    const double c = 7.5;
    for (const auto& x : s.items) shifted.items.emplace_back(x.lower + c, x.upper + c);
    const auto t0 = moment_init(s);
    const auto t1 = moment_init(shifted);
    CHECK(t1.mu == doctest::Approx(t0.mu).epsilon(1e-12));
    CHECK(t1.a0 == doctest::Approx(t0.a0 + c / t0.mu).epsilon(1e-10));
    CHECK(t1.s22 == doctest::Approx(t0.s22).epsilon(1e-10));
}

TEST_CASE("kde_curve") {
    SUBCASE("standard normal sample density at 0") {
        std::mt19937_64 gen(5);
        std::normal_distribution<double> z;
        std::vector<double> values(10000);
        for (auto& v : values) v = z(gen);
        const auto curve = kde_curve(values, {0.0});
        CHECK(curve[0].second == doctest::Approx(0.3989).epsilon(0.05));
        CHECK(std::abs(curve[0].second - 0.3989) <= 0.025);
    }
    SUBCASE("symmetry for a two-point sample") {
        const auto curve = kde_curve({-1.0, 1.0}, {-2.0, -1.0, 0.0, 1.0, 2.0});
        CHECK(curve[0].second == doctest::Approx(curve[4].second).epsilon(1e-14));
        CHECK(curve[1].second == doctest::Approx(curve[3].second).epsilon(1e-14));
        for (const auto& [x, d] : curve) CHECK(d >= 0.0);
    }
    SUBCASE("integrates to ~1 on a padded grid") {
        std::mt19937_64 gen(6);
        std::normal_distribution<double> z(3.0, 2.0);
        std::vector<double> values(2000);
        for (auto& v : values) v = z(gen);
        const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
        std::vector<double> grid;
        const double lo = *mn - 4.0, hi = *mx + 4.0;
        const int m = 800;
        for (int i = 0; i <= m; ++i) grid.push_back(lo + (hi - lo) * i / m);
        const auto curve = kde_curve(values, grid);
        double integral = 0.0;
        for (int i = 0; i < m; ++i) {
            integral += 0.5 * (curve[i].second + curve[i + 1].second) *
                        (grid[i + 1] - grid[i]);
        }
        CHECK(std::abs(integral - 1.0) <= 1e-2);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(kde_curve({1.0}, {0.0}), std::invalid_argument);
        CHECK_THROWS_AS(kde_curve({2.0, 2.0, 2.0}, {0.0}), std::invalid_argument);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qgraph/error.hpp"
#include "qgraph/graphs.hpp"
#include "support/brute_force.hpp"

using namespace qgraph;
using qgraph::testing::Rng;

namespace {

StarGraphSpec random_star(Rng& rng) {
    return StarGraphSpec::from_lengths(
        {rng.uniform(0.5, 20), rng.uniform(0.5, 20), rng.uniform(0.5, 20)},
        {rng.uniform(0, 0.99), rng.uniform(0, 0.99), rng.uniform(0, 0.99)});
}

}  // namespace

TEST_CASE("star actions") {
    const auto example = StarGraphSpec::from_scaling({1, 7, 11}, {0.1, 0.2, 0.5});
    const auto s = star_actions(example);
    CHECK(s[0] == 19.0);
    CHECK(s[1] == 17.0);
    CHECK(s[2] == 5.0);
    CHECK(s[3] == -3.0);

    SUBCASE("from lengths") {
        const auto spec = StarGraphSpec::from_lengths({10, 35, 22}, {0.99, 0.96, 0.75});
        const auto t = star_actions(spec);
        CHECK(t[0] == doctest::Approx(19).epsilon(1e-14));
        CHECK(t[1] == doctest::Approx(17).epsilon(1e-14));
        CHECK(t[2] == doctest::Approx(5).epsilon(1e-14));
        CHECK(t[3] == doctest::Approx(-3).epsilon(1e-14));
    }
    SUBCASE("equal bonds") {
        const auto t = star_actions(StarGraphSpec::from_scaling({2, 2, 2}, {0.5, 0.5, 0.5}));
        CHECK(t == std::array<double, 4>{6, 2, 2, 2});
    }
    SUBCASE("free particle") {
        const auto spec = StarGraphSpec::from_lengths({1, 2, 3}, {0, 0, 0});
        CHECK(spec.beta() == std::array<double, 3>{1, 1, 1});
        CHECK(star_actions(spec) == std::array<double, 4>{6, 4, 2, 0});
    }
}

TEST_CASE("star amplitudes") {
    auto close = [](std::array<double, 3> got, std::array<double, 3> want) {
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-15);
    };
    close(star_amplitudes(StarGraphSpec::from_scaling({1, 7, 11}, {0.1, 0.2, 0.5})),
          {0.75, 0.5, -0.25});
    close(star_amplitudes(StarGraphSpec::from_scaling({1, 1, 1}, {0.3, 0.3, 0.3})),
          {1.0 / 3, 1.0 / 3, 1.0 / 3});
    close(star_amplitudes(StarGraphSpec::from_scaling({1, 1, 1}, {0.4, 0.5, 0.3})),
          {1.0 / 3, 1.0 / 6, 0.5});
}

TEST_CASE("build star") {
    const auto f = build_star(StarGraphSpec::from_scaling({1, 7, 11}, {0.1, 0.2, 0.5}));
    CHECK(f.leading_action() == 19.0);
    CHECK(f.leading_phase() == 0.0);
    REQUIRE(f.term_count() == 3);
    const CosineTerm expected[] = {{17, 0, 0.75}, {5, 0, 0.5}, {3, 0, -0.25}};
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(f.terms()[j].action == expected[j].action);
        CHECK(f.terms()[j].phase == 0.0);
        CHECK(std::abs(f.terms()[j].amplitude - expected[j].amplitude) < 1e-14);
    }

    SUBCASE("equal bonds merge into one term") {
        const auto g = build_star(StarGraphSpec::from_scaling({2, 2, 2}, {0.5, 0.5, 0.5}));
        REQUIRE(g.term_count() == 1);
        CHECK(g.terms()[0].action == 2.0);
        CHECK(g.terms()[0].amplitude == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("zero action is kept as a constant") {
        const auto g = build_star(StarGraphSpec::from_lengths({1, 2, 3}, {0, 0, 0}));
        REQUIRE(g.term_count() == 3);
        CHECK(g.terms()[2].action == 0.0);
        CHECK(g.terms()[2].amplitude == doctest::Approx(1.0 / 3).epsilon(1e-15));
    }
}

TEST_CASE("star spec validation") {
    CHECK_THROWS_AS(StarGraphSpec::from_lengths({1, 0, 1}, {0, 0, 0}), Error);
    CHECK_THROWS_AS(StarGraphSpec::from_lengths({1, 1, 1}, {0, 1.0, 0}), Error);
    CHECK_THROWS_AS(StarGraphSpec::from_lengths({1, 1, 1}, {-0.1, 0, 0}), Error);
    CHECK_NOTHROW(StarGraphSpec::from_lengths({1, 1, 1}, {0, 0.999999, 0}));
    CHECK_THROWS_AS(StarGraphSpec::from_scaling({1, 1, -1}, {0.5, 0.5, 0.5}), Error);
    CHECK_THROWS_AS(StarGraphSpec::from_scaling({1, 1, 1}, {0.5, 0.0, 0.5}), Error);
}

TEST_CASE("star identities over random specs") {
    Rng rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const auto spec = random_star(rng);
        const auto a = star_amplitudes(spec);
        const auto s = star_actions(spec);
        CHECK(std::abs(a[0] + a[1] + a[2] - 1.0) < 1e-14);
        CHECK(std::abs(s[1] + s[2] + s[3] - s[0]) < 1e-12 * s[0]);
        for (double x : a) CHECK(std::abs(x) < 1.0);

        const auto f = build_star(spec);
        const double sum = regularity_sum(f);
        CHECK(sum >= 1.0 - 1e-14);
        CHECK_FALSE(is_regular(f));
        if (a[0] > 0 && a[1] > 0 && a[2] > 0) CHECK(std::abs(sum - 1.0) < 1e-14);
    }
}

TEST_CASE("star coefficients vary continuously as bonds merge") {
    // Bring bond 2 onto bond 1 and watch the raw data converge.
    const auto limit = StarGraphSpec::from_lengths({4, 4, 7}, {0.3, 0.3, 0.6});
    const auto s_lim = star_actions(limit);
    const auto a_lim = star_amplitudes(limit);
    double previous = INFINITY;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        const auto spec = StarGraphSpec::from_lengths({4, 4 + eps, 7}, {0.3, 0.3 + eps, 0.6});
        const auto s = star_actions(spec);
        const auto a = star_amplitudes(spec);
        double gap = 0.0;
        for (std::size_t i = 0; i < 4; ++i) gap = std::max(gap, std::abs(s[i] - s_lim[i]));
        for (std::size_t i = 0; i < 3; ++i) gap = std::max(gap, std::abs(a[i] - a_lim[i]));
        CHECK(gap < previous);
        CHECK(gap < 20 * eps);
        previous = gap;
    }
}

TEST_CASE("build chain") {
    const ChainGraphSpec spec({19, 17, 5, 3}, {0.4, 0.5, 0.3});
    CHECK(spec.r2() == doctest::Approx(-1.0 / 9).epsilon(1e-15));
    CHECK(spec.r3() == doctest::Approx(0.25).epsilon(1e-15));
    const auto f = build_chain(spec);
    CHECK(f.leading_phase() == 0.5);
    REQUIRE(f.term_count() == 3);
    CHECK(std::abs(f.terms()[0].amplitude - 1.0 / 9) < 1e-15);
    CHECK(std::abs(f.terms()[1].amplitude - 1.0 / 36) < 1e-15);
    CHECK(std::abs(f.terms()[2].amplitude - 0.25) < 1e-15);
    CHECK(std::abs(regularity_sum(f) - 7.0 / 18) < 1e-15);

    const double r2 = -1.0 / 9;
    const double r3 = 0.25;
    for (double k : {0.1, 0.77, 3.3}) {
        const double direct = std::sin(19 * k) + r2 * std::sin(17 * k) +
                              r2 * r3 * std::sin(5 * k) - r3 * std::sin(3 * k);
        CHECK(std::abs(f(k) - direct) < 1e-14);
    }

    SUBCASE("equal betas leave a pure sine") {
        const auto g = build_chain(ChainGraphSpec({7, 5, 3, 1}, {0.6, 0.6, 0.6}));
        CHECK(g.term_count() == 0);
        CHECK(std::abs(g(std::numbers::pi / 7)) < 1e-15);
    }
    SUBCASE("beta2 = beta3 leaves the leading sine plus one term") {
        const auto g = build_chain(ChainGraphSpec({7, 5, 3, 1}, {0.2, 0.6, 0.6}));
        REQUIRE(g.term_count() == 1);
        CHECK(g.terms()[0].action == 5.0);
    }
    SUBCASE("negative action is folded") {
        const auto g = build_chain(ChainGraphSpec({7, 5, 3, -1}, {0.2, 0.6, 0.4}));
        const double q2 = reflection_coefficient(0.2, 0.6);
        const double q3 = reflection_coefficient(0.6, 0.4);
        for (double k : {0.1, 0.9}) {
            const double direct = std::sin(7 * k) + q2 * std::sin(5 * k) +
                                  q2 * q3 * std::sin(3 * k) - q3 * std::sin(-k);
            CHECK(std::abs(g(k) - direct) < 1e-14);
        }
    }
}

TEST_CASE("chain regularity at level 0") {
    Rng rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        const std::array<double, 3> beta{rng.uniform(0.05, 1), rng.uniform(0.05, 1),
                                         rng.uniform(0.05, 1)};
        const ChainGraphSpec spec({10, 7, 4, 1}, beta);
        const double r2 = std::abs(spec.r2());
        const double r3 = std::abs(spec.r3());
        const double sum = regularity_sum(build_chain(spec));
        CHECK(std::abs(sum - (r2 + r3 * (1 + r2))) < 1e-14);
        CHECK(is_regular(build_chain(spec)) == (r2 + r3 * (1 + r2) < 1.0));
    }
}

TEST_CASE("chain spec validation") {
    CHECK_THROWS_AS(ChainGraphSpec({0, 0, 0, 0}, {1, 1, 1}), Error);
    CHECK_THROWS_AS(ChainGraphSpec({5, 6, 1, 1}, {1, 1, 1}), Error);
    CHECK_THROWS_AS(ChainGraphSpec({5, 4, 1, 1}, {1, 0, 1}), Error);
}

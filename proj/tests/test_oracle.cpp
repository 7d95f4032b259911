#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qgraph/error.hpp"
#include "qgraph/graphs.hpp"
#include "qgraph/oracle.hpp"
#include "support/brute_force.hpp"

using namespace qgraph;
using qgraph::testing::Rng;

namespace {

constexpr double pi = std::numbers::pi;

TrigSpectralFunction star_example() {
    return build_star(StarGraphSpec::from_scaling({1, 7, 11}, {0.1, 0.2, 0.5}));
}

RootTable table_of(const std::vector<double>& ks) {
    RootTable t;
    for (std::size_t i = 0; i < ks.size(); ++i)
        t.roots.push_back({static_cast<int>(i) + 1, ks[i], RootKind::interior});
    return t;
}

TrigSpectralFunction random_function(Rng& rng) {
    const double S0 = rng.uniform(1, 20);
    std::vector<CosineTerm> raw;
    const int n = rng.integer(1, 4);
    for (int j = 0; j < n; ++j)
        raw.push_back({rng.uniform(0, S0 * 0.99), rng.uniform(-1, 1), rng.uniform(-0.8, 0.8)});
    return normalize(raw, {S0, rng.uniform(-1, 1)});
}

}  // namespace

TEST_CASE("scan roots of a cosine") {
    const auto roots = oracle::scan_roots(normalize({}, {1, 0}), 0, 10);
    REQUIRE(roots.size() == 3);
    CHECK(std::abs(roots[0] - pi / 2) < 1e-12);
    CHECK(std::abs(roots[1] - 3 * pi / 2) < 1e-12);
    CHECK(std::abs(roots[2] - 5 * pi / 2) < 1e-12);

    CHECK(oracle::scan_roots(normalize({}, {1, 0}), 3, 3).empty());
    CHECK(oracle::scan_roots(normalize({}, {1, 0}), 3, 2).empty());
}

TEST_CASE("scan finds the tangential root at pi") {
    const auto roots = oracle::scan_roots(star_example(), 0, 4);
    REQUIRE(roots.size() == 22);
    CHECK(std::abs(roots[17] - pi) < 1e-10);
    CHECK(std::abs(roots[0] - 0.212397194941171544) < 1e-12);
    CHECK(std::abs(roots[1] - 0.390610232603749323) < 1e-12);
    CHECK(std::abs(roots[2] - 0.509545622270873898) < 1e-12);
    CHECK(std::abs(roots[21] - 3.86336452716801585) < 1e-12);
}

TEST_CASE("scan of the chain example matches the reference roots") {
    const auto roots = oracle::scan_roots(build_chain(ChainGraphSpec({19, 17, 5, 3}, {0.4, 0.5, 0.3})), 0, 2);
    REQUIRE(roots.size() == 12);
    CHECK(std::abs(roots[0] - 0.155555839322999412) < 1e-12);
    CHECK(std::abs(roots[1] - 0.340666644045434764) < 1e-12);
    CHECK(std::abs(roots[2] - 0.47582782172950926) < 1e-12);
}

TEST_CASE("scan finds a root pair closer than one cell") {
    // cos(k) - 0.999999 dips below zero over a width of about 2.8e-3 at 2 pi.
    const std::vector<CosineTerm> raw{{0, 0, 0.999999}};
    const auto f = normalize(raw, {1, 0});
    const auto roots = oracle::scan_roots(f, 1, 7);
    REQUIRE(roots.size() == 2);
    CHECK(std::abs(roots[0] - (2 * pi - std::acos(0.999999))) < 1e-9);
    CHECK(std::abs(roots[1] - (2 * pi + std::acos(0.999999))) < 1e-9);
}

TEST_CASE("scan step precondition") {
    oracle::ScanOptions options;
    options.scan_step = pi / 4 * 1.01;
    CHECK_THROWS_AS(oracle::scan_roots(normalize({}, {1, 0}), 0, 10, options), Error);
    options.scan_step = pi / 4;
    CHECK_NOTHROW(oracle::scan_roots(normalize({}, {1, 0}), 0, 10, options));
    CHECK(oracle::default_scan_step(star_example()) == doctest::Approx(pi / 760));
}

TEST_CASE("halving the scan step changes nothing") {
    Rng rng(5);
    std::vector<TrigSpectralFunction> cases{star_example()};
    for (int i = 0; i < 30; ++i) cases.push_back(random_function(rng));
    for (const auto& f : cases) {
        oracle::ScanOptions s, half;
        s.scan_step = oracle::default_scan_step(f);
        half.scan_step = s.scan_step / 2;
        const double hi = 30 * pi / f.leading_action();
        const auto a = oracle::scan_roots(f, 0, hi, s);
        const auto b = oracle::scan_roots(f, 0, hi, half);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
    }
}

TEST_CASE("scan agrees with an independent fine grid on random functions") {
    Rng rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = random_function(rng);
        const double hi = 20 * pi / f.leading_action();
        const auto ours = oracle::scan_roots(f, 0, hi);
        const auto fine = qgraph::testing::sign_change_roots(
            [&](double k) { return f(k); }, 0, hi, pi / (2000 * f.leading_action()));
        // Tangential zeros are invisible to the fine grid, so ours may have more.
        CHECK(ours.size() >= fine.size());
        if (ours.size() == fine.size())
            for (std::size_t i = 0; i < ours.size(); ++i) CHECK(std::abs(ours[i] - fine[i]) < 1e-10);
    }
}

TEST_CASE("compare") {
    const std::vector<double> ks{1, 2, 3, 4};
    SUBCASE("identical lists") {
        const auto r = oracle::compare(table_of(ks), ks, 1e-9);
        CHECK(r.pass);
        CHECK(r.max_delta == 0.0);
        CHECK_FALSE(r.first_mismatch);
        CHECK(r.matched.size() == 4);
        CHECK(r.summary().find("pass") != std::string::npos);
    }
    SUBCASE("solver missing one root") {
        const auto r = oracle::compare(table_of({1, 2, 4}), ks, 1e-9);
        CHECK_FALSE(r.pass);
        REQUIRE(r.first_mismatch);
        CHECK(*r.first_mismatch == 3);
        CHECK(r.summary().find("n = 3") != std::string::npos);
    }
    SUBCASE("solver has an extra root at the end") {
        const auto r = oracle::compare(table_of({1, 2, 3, 4, 5}), ks, 1e-9);
        CHECK_FALSE(r.pass);
        CHECK(*r.first_mismatch == 5);
    }
    SUBCASE("value outside tolerance") {
        const auto r = oracle::compare(table_of({1, 2 + 1e-8, 3, 4}), ks, 1e-9);
        CHECK_FALSE(r.pass);
        CHECK(*r.first_mismatch == 2);
        CHECK(r.max_delta == doctest::Approx(1e-8).epsilon(1e-6));
    }
    SUBCASE("symmetric under swap at equal cardinality") {
        Rng rng(3);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> a, b;
            double x = 0, y = 0;
            for (int i = 0; i < 6; ++i) {
                x += rng.uniform(0.5, 1);
                y = x + (rng.integer(0, 3) == 0 ? rng.uniform(-2e-9, 2e-9) : 0.0);
                a.push_back(x);
                b.push_back(y);
            }
            CHECK(oracle::compare(table_of(a), b, 1e-9).pass ==
                  oracle::compare(table_of(b), a, 1e-9).pass);
        }
    }
}

TEST_CASE("weyl audit") {
    SUBCASE("pure cosine stays within one") {
        for (double S0 : {1.0, 3.7, 19.0}) {
            const auto f = normalize({}, {S0, 0});
            for (double K : {1.0, 5.5, 40.0}) {
                const auto roots = oracle::scan_roots(f, 0, K);
                const auto a = oracle::weyl_audit(roots, S0, 0, K, 0);
                CHECK(std::abs(a.deviation) <= 1.0);
                CHECK(a.pass);
            }
        }
    }
    SUBCASE("star example up to 4") {
        const auto roots = oracle::scan_roots(star_example(), 0, 4);
        const auto a = oracle::weyl_audit(roots, 19, 0, 4, 3);
        CHECK(a.expected == doctest::Approx(76 / pi));
        CHECK(a.actual == 22);
        CHECK(std::abs(a.deviation) <= 4);
        CHECK(a.pass);
    }
    SUBCASE("empty window") {
        const std::vector<double> roots{1, 2};
        const auto a = oracle::weyl_audit(roots, 19, 3, 3, 2);
        CHECK(a.expected == 0.0);
        CHECK(a.actual == 0);
        CHECK(a.deviation == 0.0);
    }
    SUBCASE("counts only the window") {
        const std::vector<double> roots{0.5, 1, 2, 3};
        const auto a = oracle::weyl_audit(roots, pi, 0.5, 2, 0);
        CHECK(a.actual == 2);
        CHECK(a.expected == doctest::Approx(1.5));
    }
    SUBCASE("too few roots fails") {
        const std::vector<double> roots{1};
        const auto a = oracle::weyl_audit(roots, 10 * pi, 0, 1, 2);
        CHECK_FALSE(a.pass);
        CHECK(a.summary().find("fail") != std::string::npos);
    }
}

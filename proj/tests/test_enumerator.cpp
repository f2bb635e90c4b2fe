#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "gasket/enumerator.hpp"
#include "gasket/spatial_index.hpp"
#include "oracle.hpp"

using namespace gasket;

namespace {

const DescartesQuadruple kUnit = quadruple_from_curvatures(-1, 2, 2, 3);

} // namespace

TEST_SUITE("enumerator") {

TEST_CASE("threshold just above log 3 gives the five circles up to curvature 3") {
    const auto cs = enumerate(kUnit, std::log(3.0) + 1e-9);
    REQUIRE(cs.size() == 5);
    const Complex expected[] = {0.0, -0.5, 0.5, Complex(0, -2.0 / 3), Complex(0, 2.0 / 3)};
    const double curv[] = {-1, 2, 2, 3, 3};
    for (int i = 0; i < 5; ++i) {
        CHECK(std::abs(cs[i].center - expected[i]) < 1e-12);
        CHECK(cs[i].curvature == curv[i]);
    }
}

TEST_CASE("t = 0 keeps only the bounding circle") {
    const auto cs = enumerate(kUnit, 0.0);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].curvature == -1.0);
    CHECK_THROWS_AS(enumerate(kUnit, -1.0), InvalidArgument);
}

TEST_CASE("curvatures match the integer Descartes closure") {
    for (double bound : {10.0, 100.0, 1000.0}) {
        const auto cs = enumerate(kUnit, std::log(bound));
        const auto expected = oracle::curvatures_below(-1, 2, 2, 3, bound);
        REQUIRE(cs.size() == expected.size());
        for (std::size_t i = 0; i < cs.size(); ++i) {
            CHECK(cs[i].curvature == doctest::Approx(expected[i]).epsilon(1e-12));
            CHECK(cs[i].curvature < bound);
            CHECK(cs[i].radius > 1.0 / bound);
        }
    }
}

TEST_CASE("center set invariants hold exhaustively on inner circles") {
    const auto cs = enumerate(solve_root_quadruple({1.8 * kPi / 3, 3.7 * kPi / 3}), std::log(300.0));
    REQUIRE(cs.size() < 10000);
    for (std::size_t i = 1; i < cs.size(); ++i) {
        CHECK(cs[i].curvature > 0.0);
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            const double d = std::abs(cs[i].center - cs[j].center);
            REQUIRE(d >= cs[i].radius + cs[j].radius - 1e-9);
            REQUIRE(d > 1e-9);
        }
    }
}

TEST_CASE("output is sorted by curvature then center") {
    const auto cs = enumerate(solve_root_quadruple({2.0, 4.0}), 6.0);
    for (std::size_t i = 1; i < cs.size(); ++i) {
        const auto& a = cs[i - 1];
        const auto& b = cs[i];
        const bool ordered = a.curvature < b.curvature ||
                             (a.curvature == b.curvature &&
                              (a.center.real() < b.center.real() ||
                               (a.center.real() == b.center.real() && a.center.imag() <= b.center.imag())));
        REQUIRE(ordered);
    }
}

TEST_CASE("monotone in t and truncation agrees with direct enumeration") {
    const auto root = solve_root_quadruple({1.8 * kPi / 3, 3.7 * kPi / 3});
    const auto big = enumerate(root, 7.0);
    const auto small = enumerate(root, 5.5);
    const auto cut = big.truncated(5.5);
    REQUIRE(cut.size() == small.size());
    for (std::size_t i = 0; i < cut.size(); ++i) CHECK(cut[i].center == small[i].center);
    std::set<std::pair<double, double>> all;
    for (const auto& p : big.points()) all.insert({p.center.real(), p.center.imag()});
    for (const auto& p : small.points()) CHECK(all.count({p.center.real(), p.center.imag()}) == 1);
    CHECK_THROWS_AS(small.truncated(6.0), InvalidArgument);
}

TEST_CASE("children are strictly larger than the circle they replace") {
    bool ok = true;
    std::size_t visited = 0;
    walk_gasket(
        kUnit, std::log(2000.0), [](const Circle&) {},
        [&](const DescartesQuadruple& q, std::size_t depth) {
            ++visited;
            if (depth < 2 || !q.last_swapped) return;
            // the replaced circle is recovered by reflecting back
            const auto parent = reflect(q, *q.last_swapped);
            ok = ok && q.circles[*q.last_swapped].curvature > parent.circles[*q.last_swapped].curvature;
        });
    CHECK(ok);
    CHECK(visited > 100);
}

TEST_CASE("stats and capacity limit") {
    EnumerationStats stats;
    const auto cs = enumerate(kUnit, 5.0, {}, &stats);
    CHECK(stats.circles_emitted == cs.size());
    CHECK(stats.max_tree_depth > 0);
    EnumerationOptions tight;
    tight.capacity_limit = 10;
    CHECK_THROWS_AS(enumerate(kUnit, 5.0, tight), CapacityExceeded);
}

TEST_CASE("packing bound on disk counts") {
    const double t = 6.0;
    const auto cs = enumerate(solve_root_quadruple({1.8 * kPi / 3, 3.7 * kPi / 3}), t);
    const auto pts = oracle::centers(cs);
    const double e = std::exp(-t);
    for (double rho : {0.01, 0.05, 0.2}) {
        for (Complex z : {Complex(0, 0), Complex(0.3, -0.2), Complex(-0.5, 0.5), Complex(0.9, 0)}) {
            std::size_t n = 0;
            for (Complex p : pts) n += std::abs(p - z) < rho;
            CHECK(static_cast<double>(n) <= (rho + e) * (rho + e) / (e * e));
        }
    }
}

TEST_CASE("growth counts") {
    const double only0[] = {0.0};
    const auto g0 = count_growth(kUnit, only0);
    REQUIRE(g0.size() == 1);
    CHECK(g0[0].count == 1);
    const double log3[] = {std::log(3.0) + 1e-9};
    CHECK(count_growth(kUnit, log3)[0].count == 5);

    const double grid[] = {2.0, 3.0, 4.0, 5.0, 6.0};
    const auto g = count_growth(kUnit, grid);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i].count == enumerate(kUnit, grid[i]).size());
    const double bad[] = {2.0, 2.0};
    CHECK_THROWS_AS(count_growth(kUnit, bad), InvalidArgument);
}

TEST_CASE("growth exponent over a moderate window and at t = log 10^4") {
    const double t4 = std::log(1e4);
    const auto n = static_cast<double>(enumerate(kUnit, t4).size());
    CHECK(std::log(n) / t4 >= 1.15);
    CHECK(std::log(n) / t4 <= 1.35);

    std::vector<double> ts;
    for (double t = std::log(1e2); t <= std::log(1e4) + 1e-12; t += 0.25) ts.push_back(t);
    const auto g = count_growth(kUnit, ts);
    const auto slope = fit_growth_exponent(g, ts.front(), ts.back());
    REQUIRE(slope);
    CHECK(*slope > 1.2);
    CHECK(*slope < 1.4);
    const GrowthPoint single[] = {{3.0, 10}};
    CHECK_FALSE(fit_growth_exponent(single, 0.0, 10.0).has_value());
}

TEST_CASE("center CSV round trip keeps 17 digits") {
    const auto cs = enumerate(kUnit, std::log(3.0) + 1e-9);
    std::ostringstream os;
    write_center_csv(os, cs);
    const std::string text = os.str();
    CHECK(text.rfind("curvature,center_re,center_im,radius\n", 0) == 0);
    CHECK(text.find("0.66666666666666663") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
}

}

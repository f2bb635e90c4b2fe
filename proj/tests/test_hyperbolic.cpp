#include <doctest.h>

#include <cmath>
#include <random>

#include "gasket/enumerator.hpp"
#include "gasket/hyperbolic.hpp"

using namespace gasket;

namespace {

MobiusMap random_map(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (;;) {
        const Complex a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng)), d(u(rng), u(rng));
        if (std::abs(a * d - b * c) > 0.1) return {a, b, c, d};
    }
}

H3Point random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0), h(0.1, 2.0);
    return {Complex(u(rng), u(rng)), h(rng)};
}

} // namespace

TEST_SUITE("hyperbolic") {

TEST_CASE("action examples") {
    const H3Point p(Complex(0.3, -0.7), 0.4);
    const H3Point id = act(MobiusMap::identity(), p);
    CHECK(std::abs(id.z - p.z) < 1e-15);
    CHECK(id.r == doctest::Approx(p.r));

    const double t = 1.7;
    const H3Point up = act(MobiusMap(std::exp(t / 2), 0.0, 0.0, std::exp(-t / 2)), H3Point(0.0, 1.0));
    CHECK(std::abs(up.z) < 1e-15);
    CHECK(up.r == doctest::Approx(std::exp(t)));

    const H3Point moved = act(MobiusMap::translation(Complex(2, 1)), p);
    CHECK(std::abs(moved.z - (p.z + Complex(2, 1))) < 1e-15);
    CHECK(moved.r == doctest::Approx(p.r));
}

TEST_CASE("inversion acts as the unit-sphere inversion composed with a reflection") {
    // z + r j goes to (conj z + r j) / (|z|^2 + r^2)
    const H3Point p(Complex(1.0, 2.0), 0.5);
    const H3Point q = act(MobiusMap::inversion(), p);
    const double n = std::norm(p.z) + p.r * p.r;
    CHECK(q.r == doctest::Approx(p.r / n));
    CHECK(std::abs(q.z - std::conj(p.z) / n) < 1e-12);
    const H3Point j = act(MobiusMap::inversion(), H3Point(0.0, 1.0));
    CHECK(std::abs(j.z) < 1e-15);
    CHECK(j.r == doctest::Approx(1.0));
}

TEST_CASE("distance examples") {
    const H3Point j(0.0, 1.0);
    CHECK(hyp_distance(j, j) == 0.0);
    CHECK(hyp_distance(j, H3Point(0.0, 4.0)) == doctest::Approx(std::log(4.0)));
    CHECK(cosh_distance(j, H3Point(0.0, 4.0)) == doctest::Approx(17.0 / 8.0));
    const H3Point a(0.0, 1.0), b(2.0, 1.0);
    CHECK(cosh_distance(a, b) == doctest::Approx(3.0));
    CHECK(hyp_distance(a, b) == doctest::Approx(std::acosh(3.0)));
    CHECK(hyp_distance(a, b) == doctest::Approx(1.7627472).epsilon(1e-7));
    CHECK(hyp_distance(a, b) == hyp_distance(b, a));
    CHECK_THROWS_AS(H3Point(0.0, 0.0), InvalidArgument);
}

TEST_CASE("Busemann function at infinity") {
    CHECK(busemann_infinity(H3Point(0.0, 1.0)) == 0.0);
    CHECK(busemann_infinity(H3Point(0.0, 2.0)) == doctest::Approx(std::log(2.0)));
    CHECK(busemann_infinity(H3Point(5.0, 3.0)) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("apex map") {
    const auto unit = apex_of_circle(Circle(0.0, -1.0));
    REQUIRE_FALSE(unit.at_infinity());
    CHECK(unit.point->r == 1.0);
    const auto half = apex_of_circle(Circle(0.5, 2.0));
    CHECK(std::abs(half.point->z - 0.5) < 1e-15);
    CHECK(half.point->r == 0.5);

    CHECK(apex_of_image(MobiusMap::inversion(), Circle::from_radius(1.0, 1.0)).at_infinity());
    const auto dil = apex_of_image(MobiusMap::dilation(3.0));
    REQUIRE_FALSE(dil.at_infinity());
    CHECK(dil.point->r == doctest::Approx(3.0));
}

TEST_CASE("isometries carry the hemisphere over a circle onto the one over its image") {
    std::mt19937_64 rng(3);
    const Circle base(0.0, -1.0);
    int tested = 0;
    for (int k = 0; k < 50; ++k) {
        const auto m = random_map(rng);
        const auto apex = apex_of_image(m, base);
        if (apex.at_infinity()) continue;
        ++tested;
        const double big = apex.point->r;
        // images of points on the unit hemisphere lie on the image hemisphere
        for (const H3Point p : {H3Point(0.0, 1.0), H3Point(0.6, 0.8), H3Point(Complex(0.0, -0.28), 0.96)}) {
            const auto w = act(m, p);
            CHECK(std::norm(w.z - apex.point->z) + w.r * w.r == doctest::Approx(big * big).epsilon(1e-9));
        }
        // and the apex is its highest point
        CHECK(act(m, H3Point(0.0, 1.0)).r <= big * (1 + 1e-12));
    }
    CHECK(tested > 40);
}

TEST_CASE("isometry and composition on random data") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
        const auto m1 = random_map(rng), m2 = random_map(rng);
        const auto p = random_point(rng), q = random_point(rng);
        const double d = hyp_distance(p, q);
        CHECK(hyp_distance(act(m1, p), act(m1, q)) == doctest::Approx(d).epsilon(1e-9));
        const auto lhs = act(m1 * m2, p);
        const auto rhs = act(m1, act(m2, p));
        CHECK(std::abs(lhs.z - rhs.z) <= 1e-9 * std::max(1.0, std::abs(lhs.z)));
        CHECK(lhs.r == doctest::Approx(rhs.r).epsilon(1e-9));
    }
}

TEST_CASE("separation of inner circle apices in the symmetric gasket") {
    const auto cs = enumerate(solve_root_quadruple({2 * kPi / 3, 4 * kPi / 3}), std::log(60.0));
    double worst = 1e300, worst_horizontal = 1e300;
    for (std::size_t i = 1; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            const H3Point a(cs[i].center, cs[i].radius), b(cs[j].center, cs[j].radius);
            worst = std::min(worst, cosh_distance(a, b));
            worst_horizontal = std::min(worst_horizontal, std::abs(a.z - b.z) - a.r - b.r);
        }
    CHECK(worst >= 3.0 - 1e-9);
    CHECK(worst <= 3.0 + 1e-9);  // tangent circles attain the bound
    CHECK(worst_horizontal >= -1e-9);
}

}

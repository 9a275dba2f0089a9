#include <cmath>
#include <random>

#include "doctest.h"
#include "klein/geom/circle.hpp"
#include "klein/geom/io.hpp"
#include "test_support.hpp"

using namespace klein;
using namespace klein::geom;

TEST_CASE("canonical form and derived views") {
    const GeneralizedCircle c = GeneralizedCircle::circle({1.0, 2.0}, 3.0);
    CHECK(c.p() > 0.0);
    CHECK(std::abs(std::norm(c.q()) - c.p() * c.s() - 1.0) < 1e-12);
    CHECK(std::abs(c.center() - Complex(1.0, 2.0)) < 1e-12);
    CHECK(c.radius() == doctest::Approx(3.0));
    CHECK(c.form(Complex(1.0, 2.0)) < 0.0);
    CHECK(c.form(Complex(10.0, 2.0)) > 0.0);

    const GeneralizedCircle l = GeneralizedCircle::line({0.0, 1.0}, {1.0, 1.0});
    CHECK(l.is_line());
    CHECK((l.q().real() > 0.0 || (l.q().real() == 0.0 && l.q().imag() > 0.0)));
    CHECK(l.distance({5.0, 3.0}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(GeneralizedCircle(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GeneralizedCircle::circle(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("circle through three points") {
    const GeneralizedCircle c = GeneralizedCircle::through({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0});
    CHECK(std::abs(c.center() - Complex(0.5, 0.5)) < 1e-12);
    CHECK(GeneralizedCircle::through({0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}).is_line());
}

TEST_CASE("circle_apply examples") {
    const GeneralizedCircle unit = GeneralizedCircle::circle(0.0, 1.0);
    const GeneralizedCircle doubled = apply(MoebiusMap::scaling(2.0), unit);
    CHECK(std::abs(doubled.center()) < 1e-12);
    CHECK(doubled.radius() == doctest::Approx(2.0));

    CHECK(approx_equal(apply(MoebiusMap(0.0, 1.0, 1.0, 0.0), unit), unit, 1e-12));

    // z -> 10 + 1/z; oracle: circle through the images of three sample points
    const MoebiusMap m(10.0, 1.0, 1.0, 0.0);
    const GeneralizedCircle image = apply(m, unit);
    const GeneralizedCircle oracle = GeneralizedCircle::through(m(Complex(1.0)), m(Complex(0.0, 1.0)), m(Complex(-1.0)));
    CHECK(approx_equal(image, oracle, 1e-12));
    CHECK(std::abs(image.center() - 10.0) < 1e-12);
    CHECK(image.radius() == doctest::Approx(1.0));
}

TEST_CASE("circles through the pole become lines exactly") {
    const MoebiusMap inv(0.0, 1.0, 1.0, 0.0);
    const GeneralizedCircle through_zero = GeneralizedCircle::circle(1.0, 1.0);
    const GeneralizedCircle image = apply(inv, through_zero);
    CHECK(image.is_line());
    CHECK(image.distance(Complex(0.5, 7.0)) < 1e-12);  // Re(1/z) = 1/2
    // and back again
    const GeneralizedCircle back = apply(inv, image);
    CHECK_FALSE(back.is_line());
    CHECK(approx_equal(back, through_zero, 1e-12));
}

TEST_CASE("oriented images track sides") {
    const GeneralizedCircle unit = GeneralizedCircle::circle(0.0, 1.0);
    const OrientedCircle ext{unit, Side::exterior};
    const OrientedCircle image = apply(MoebiusMap(0.0, 1.0, 1.0, 0.0), ext);
    CHECK(image.side == Side::interior);
    CHECK(image.contains(SpherePoint(0.1)));
    const OrientedCircle shifted = apply(MoebiusMap::translation(5.0), ext);
    CHECK(shifted.side == Side::exterior);
    CHECK(shifted.contains(SpherePoint::infinity()));
}

TEST_CASE("circle_apply respects the point action") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const MoebiusMap m = klein::testing::random_moebius(rng);
        const GeneralizedCircle c = klein::testing::random_circle(rng);
        const GeneralizedCircle image = apply(m, c);
        for (Complex z : c.sample(20)) {
            const SpherePoint w = m(SpherePoint(z));
            if (w.is_infinite()) continue;
            const double scale = image.is_line() ? 1.0 : std::max(1.0, image.radius());
            CHECK(image.distance(w.value()) / scale < 1e-9);
        }
    }
}

TEST_CASE("inversive distance") {
    const double a = 0.5, b = 3.0;
    CHECK(inversive_distance(GeneralizedCircle::circle(0.0, a), GeneralizedCircle::circle(0.0, b)) ==
          doctest::Approx((a / b + b / a) / 2.0).epsilon(1e-12));
    const GeneralizedCircle unit = GeneralizedCircle::circle(0.0, 1.0);
    CHECK(inversive_distance(unit, GeneralizedCircle::circle(2.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inversive_distance(unit, GeneralizedCircle::circle(10.0, 1.0)) == doctest::Approx(49.0).epsilon(1e-12));
    CHECK(inversive_distance(unit, unit) == doctest::Approx(1.0));

    CHECK(relation(unit, GeneralizedCircle::circle(10.0, 1.0)) == CircleRelation::disjoint_external);
    CHECK(relation(GeneralizedCircle::circle(0.0, a), GeneralizedCircle::circle(0.0, b)) ==
          CircleRelation::disjoint_nested);
    CHECK(relation(unit, GeneralizedCircle::circle(2.0, 1.0)) == CircleRelation::tangent);
    CHECK(relation(unit, GeneralizedCircle::circle(1.0, 1.0)) == CircleRelation::crossing);
}

TEST_CASE("inversive distance is Moebius invariant") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const GeneralizedCircle c1 = klein::testing::random_circle(rng), c2 = klein::testing::random_circle(rng);
        const MoebiusMap m = klein::testing::random_moebius(rng);
        const double before = inversive_distance(c1, c2);
        const double after = inversive_distance(apply(m, c1), apply(m, c2));
        CHECK(std::abs(before - after) < 1e-9 * std::max(1.0, before));
    }
}

TEST_CASE("circle json") {
    const GeneralizedCircle c = GeneralizedCircle::circle({1.0, -2.0}, 0.5);
    CHECK(approx_equal(circle_from_json(to_json(c)), c, 1e-12));
    const GeneralizedCircle l = GeneralizedCircle::line(0.0, {1.0, 1.0});
    const Json j = to_json(l);
    CHECK(j.contains("line"));
    CHECK(approx_equal(circle_from_json(j), l, 1e-12));
}

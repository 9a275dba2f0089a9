#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "klein/annulus.hpp"
#include "test_support.hpp"

using namespace klein;
using namespace klein::annulus;
using geom::GeneralizedCircle;

namespace {

constexpr double kPi = std::numbers::pi;

// Ring modulus from the composition of the inversions in both circles: it is
// loxodromic with fixed points at the limit points of the pencil and
// multiplier (outer/inner)^2 in the concentric picture.
double inversion_oracle_modulus(Complex c1, double r1, Complex c2, double r2) {
    const Complex k = std::conj(c1 - c2);
    const geom::MoebiusMap m(c2 * k + r2 * r2, -c2 * k * c1 + c2 * r1 * r1 - r2 * r2 * c1, k, r1 * r1 - k * c1);
    const auto fp = geom::fixed_points(m);
    return std::abs(std::log(std::abs(fp.multiplier))) / (4.0 * kPi);
}

// Independent separation test: inner vertices inside, outer vertices outside,
// and a dense sampling of the circle inside the polygonal annulus.
bool separates(const BoundarySampling& b, const GeneralizedCircle& c, double margin) {
    if (c.is_line()) return false;
    const Complex center = c.center();
    const double r = c.radius();
    for (Complex v : b.inner)
        if (std::abs(v - center) >= r - margin) return false;
    for (Complex v : b.outer)
        if (std::abs(v - center) <= r + margin) return false;
    for (Complex z : c.sample(2048))
        if (!point_in_polygon(z, b.outer) || point_in_polygon(z, b.inner)) return false;
    return true;
}

// Brute force over a center lattice and a log-spaced radius list.
bool brute_force_circle_exists(const BoundarySampling& b) {
    double lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY;
    for (Complex v : b.outer) {
        lo_x = std::min(lo_x, v.real());
        hi_x = std::max(hi_x, v.real());
        lo_y = std::min(lo_y, v.imag());
        hi_y = std::max(hi_y, v.imag());
    }
    const double size = std::max(hi_x - lo_x, hi_y - lo_y);
    constexpr int n = 40, n_r = 400;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const Complex c(lo_x + (hi_x - lo_x) * i / n, lo_y + (hi_y - lo_y) * j / n);
            if (!point_in_polygon(c, b.outer)) continue;
            double reach = 0.0, gap = INFINITY;
            for (Complex v : b.inner) reach = std::max(reach, std::abs(v - c));
            for (std::size_t k = 0; k < b.outer.size(); ++k)
                gap = std::min(gap, distance_to_segment(c, b.outer[k], b.outer[(k + 1) % b.outer.size()]));
            for (int k = 0; k < n_r; ++k) {
                const double r = size * std::pow(10.0, -3.0 + 3.0 * k / (n_r - 1));
                if (reach < r && r < gap) return true;
            }
        }
    }
    return false;
}

}  // namespace

TEST_CASE("modulus_round") {
    CHECK(modulus_round(std::exp(kPi)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(modulus_round(std::exp(kPi / 2.0)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(modulus_round(1.0), std::invalid_argument);
    CHECK_THROWS_AS(modulus_round(0.5), std::invalid_argument);
    CHECK_THROWS_AS(AnnulusSpec::round(1.0), std::invalid_argument);
}

TEST_CASE("modulus_circle_ring closed forms") {
    const double big = std::exp(2.0 * kPi);
    CHECK(modulus_circle_ring(GeneralizedCircle::circle(0.0, 1.0), GeneralizedCircle::circle(0.0, big)) ==
          doctest::Approx(std::log(big / 1.0) / (2.0 * kPi)).epsilon(1e-13));

    for (double r : {1.01, 1.5, 3.0, 23.1407, 400.0}) {
        const double ring = modulus_circle_ring(GeneralizedCircle::circle(0.0, 1.0 / r), GeneralizedCircle::circle(0.0, r));
        CHECK(std::abs(ring - modulus_round(r)) <= 1e-13 * std::max(1.0, modulus_round(r)) + 1e-15);
    }

    const double value =
        modulus_circle_ring(GeneralizedCircle::circle(0.3, 0.1), GeneralizedCircle::circle(0.0, 1.0));
    CHECK(std::abs(value - inversion_oracle_modulus(0.3, 0.1, 0.0, 1.0)) < 1e-9);

    CHECK_THROWS_AS(
        modulus_circle_ring(GeneralizedCircle::circle(0.0, 1.0), GeneralizedCircle::circle(1.5, 1.0)),
        std::invalid_argument);
    CHECK_THROWS_AS(
        modulus_circle_ring(GeneralizedCircle::circle(0.0, 1.0), GeneralizedCircle::circle(5.0, 1.0)),
        std::invalid_argument);
}

TEST_CASE("ring modulus matches the inversion oracle and is Möbius invariant") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Complex c2 = testing::random_complex(rng);
        const double r2 = 0.5 + 2.0 * unit(rng);
        const double r1 = r2 * (0.05 + 0.8 * unit(rng));
        const Complex c1 = c2 + std::polar((r2 - r1) * 0.95 * unit(rng), 2.0 * kPi * unit(rng));
        const GeneralizedCircle inner = GeneralizedCircle::circle(c1, r1), outer = GeneralizedCircle::circle(c2, r2);
        const double mod = modulus_circle_ring(inner, outer);
        CHECK(std::abs(mod - inversion_oracle_modulus(c1, r1, c2, r2)) < 1e-9);

        // pole of m outside the outer disk keeps the ring bounded and nested
        geom::MoebiusMap m = testing::random_moebius(rng);
        if (m.c() != 0.0 && std::abs(-m.d() / m.c() - c2) <= r2 * 1.1) continue;
        const double moved = modulus_circle_ring(geom::apply(m, inner), geom::apply(m, outer));
        CHECK(std::abs(moved - mod) < 1e-9);
    }
}

TEST_CASE("core circle of a ring lies in the coaxial family between the boundaries") {
    const CircleRing ring{GeneralizedCircle::circle(0.3, 0.1), GeneralizedCircle::circle(0.0, 1.0)};
    const GeneralizedCircle core = ring_core_circle(ring);
    const double total = modulus_circle_ring(ring);
    CHECK(modulus_circle_ring(ring.inner, core) == doctest::Approx(total / 2.0).epsilon(1e-9));
    CHECK(modulus_circle_ring(core, ring.outer) == doctest::Approx(total / 2.0).epsilon(1e-9));
}

TEST_CASE("Laurent maps and mapped annuli") {
    const LaurentMap j = LaurentMap::joukowski(0.2);
    CHECK(std::abs(j(Complex(2.0, 0.0)) - Complex(2.1, 0.0)) < 1e-15);
    CHECK(std::abs(j.derivative(Complex(1.0, 1.0)) - (1.0 - 0.2 / (Complex(1.0, 1.0) * Complex(1.0, 1.0)))) < 1e-15);
    CHECK_THROWS_AS(LaurentMap({{0, 3.0}}), std::invalid_argument);
    CHECK_THROWS_AS(LaurentMap({{2, Complex(NAN, 0.0)}}), std::invalid_argument);

    // z + c/z is injective on A_r iff c <= 1/r^2 or c >= r^2
    CHECK_NOTHROW(AnnulusSpec::mapped(2.0, LaurentMap::joukowski(0.2)));
    CHECK_NOTHROW(AnnulusSpec::mapped(2.0, LaurentMap::joukowski(4.5)));
    CHECK_THROWS_AS(AnnulusSpec::mapped(2.0, LaurentMap::joukowski(0.5)), std::invalid_argument);
    CHECK_THROWS_AS(AnnulusSpec::mapped(2.0, LaurentMap({{2, 1.0}})), std::invalid_argument);
}

TEST_CASE("boundary sampling orders and orients curves") {
    Polyline small, large;
    for (int k = 0; k < 64; ++k) {
        small.push_back(std::polar(1.0, -2.0 * kPi * k / 64));
        large.push_back(std::polar(3.0, 2.0 * kPi * k / 64));
    }
    const BoundarySampling s = BoundarySampling::from_curves(large, small);
    CHECK(std::abs(s.inner.front()) == doctest::Approx(1.0));
    CHECK(signed_area2(s.inner) > 0.0);
    CHECK(signed_area2(s.outer) > 0.0);
    CHECK(s.contains(2.0));
    CHECK_FALSE(s.contains(0.5));
    CHECK_FALSE(s.contains(4.0));

    Polyline shifted = small;
    for (Complex& z : shifted) z += 1.5;
    CHECK_THROWS_AS(BoundarySampling::from_curves(shifted, small), std::invalid_argument);
    for (Complex& z : shifted) z += 5.0;
    CHECK_THROWS_AS(BoundarySampling::from_curves(shifted, small), std::invalid_argument);
}

TEST_CASE("modulus_numeric against closed forms") {
    const double big = std::exp(2.0 * kPi);
    const auto concentric = sample_boundaries(
        AnnulusSpec::ring(GeneralizedCircle::circle(0.0, 1.0), GeneralizedCircle::circle(0.0, big)));
    CHECK(modulus_numeric(concentric, 0.05) == doctest::Approx(1.0).epsilon(0.01));

    const auto a3 = sample_boundaries(AnnulusSpec::round(3.0));
    CHECK(modulus_numeric(a3) == doctest::Approx(std::log(3.0) / kPi).epsilon(0.01));

    const CircleRing ring{GeneralizedCircle::circle(0.3, 0.1), GeneralizedCircle::circle(0.0, 1.0)};
    const auto ring_sampling = sample_boundaries(AnnulusSpec::ring(ring.inner, ring.outer));
    const double exact = inversion_oracle_modulus(0.3, 0.1, 0.0, 1.0);
    const double coarse = modulus_numeric(ring_sampling, 2.0 * kDefaultGridStep);
    const double fine = modulus_numeric(ring_sampling, kDefaultGridStep);
    CHECK(fine == doctest::Approx(exact).epsilon(0.01));
    CHECK(std::abs(fine - exact) < std::abs(coarse - exact));

    // the mapped annulus keeps the modulus of its base
    const auto jouk = sample_boundaries(AnnulusSpec::mapped(3.0, LaurentMap::joukowski(0.1)));
    CHECK(modulus_numeric(jouk) == doctest::Approx(modulus_round(3.0)).epsilon(0.01));
}

TEST_CASE("modulus_numeric errors") {
    const auto thin = sample_boundaries(
        AnnulusSpec::ring(GeneralizedCircle::circle(0.0, 1.0), GeneralizedCircle::circle(0.0, 1.01)));
    CHECK_THROWS_AS(modulus_numeric(thin, 1.0), GridError);
    CHECK_THROWS_AS(modulus_numeric(thin, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(modulus_numeric(thin, -0.1), std::invalid_argument);
}

TEST_CASE("grotzsch_check") {
    const AnnulusSpec a4 = AnnulusSpec::round(4.0);

    const auto same = grotzsch_check(a4, {GeneralizedCircle::circle(0.0, 0.25), GeneralizedCircle::circle(0.0, 4.0)});
    CHECK(same.holds);
    CHECK(same.mod_inner == doctest::Approx(same.mod_outer).epsilon(1e-12));

    const auto strict = grotzsch_check(a4, {GeneralizedCircle::circle(0.0, 0.5), GeneralizedCircle::circle(0.0, 2.0)});
    CHECK(strict.holds);
    CHECK(strict.mod_inner < strict.mod_outer - 0.1);
    CHECK_FALSE(strict.numeric);

    // inner circle does not surround the hole
    CHECK_THROWS_AS(grotzsch_check(a4, {GeneralizedCircle::circle(1.0, 0.2), GeneralizedCircle::circle(0.0, 2.0)}),
                    std::invalid_argument);
    // outer circle pokes out of A_4
    CHECK_THROWS_AS(grotzsch_check(a4, {GeneralizedCircle::circle(0.0, 0.5), GeneralizedCircle::circle(0.5, 3.8)}),
                    std::invalid_argument);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double r = 2.0 + 2.0 * unit(rng);
        const Complex c = std::polar(0.8 * unit(rng) / (r * r), 2.0 * kPi * unit(rng));
        const AnnulusSpec a = AnnulusSpec::mapped(r, LaurentMap::joukowski(c));
        // confocal ellipses: inner major semi-axis 1/r + |c| r, outer minor r - |c|/r
        const double inner_reach = 1.0 / r + std::abs(c) * r;
        const double outer_gap = r - std::abs(c) / r;
        const double lo = inner_reach + (outer_gap - inner_reach) * 0.3 * unit(rng);
        const double hi = outer_gap - (outer_gap - inner_reach) * 0.3 * unit(rng);
        const auto result = grotzsch_check(a, {GeneralizedCircle::circle(0.0, lo), GeneralizedCircle::circle(0.0, hi)});
        CHECK(result.numeric);
        CHECK(result.holds);
    }
}

TEST_CASE("cover_modulus_relation") {
    const auto id = cover_modulus_relation(2.0, 1);
    CHECK(id.ratio == doctest::Approx(1.0));
    const auto three = cover_modulus_relation(2.0, 3);
    CHECK(three.mod_domain == doctest::Approx(std::log(2.0) / kPi));
    CHECK(three.mod_target == doctest::Approx(3.0 * std::log(2.0) / kPi));
    CHECK(three.target_is_d_times_domain);
    CHECK_FALSE(three.domain_is_d_times_target);
    const auto e = cover_modulus_relation(std::exp(kPi), 2);
    CHECK(e.mod_domain == doctest::Approx(1.0));
    CHECK(e.mod_target == doctest::Approx(2.0));
    CHECK(e.ratio == doctest::Approx(0.5));
    CHECK_THROWS_AS(cover_modulus_relation(2.0, 0), std::invalid_argument);
}

TEST_CASE("find_separating_circle") {
    const auto unit = find_separating_circle(AnnulusSpec::round(1.7));
    REQUIRE(unit.has_value());
    CHECK(geom::approx_equal(*unit, GeneralizedCircle::circle(0.0, 1.0)));

    const AnnulusSpec ring = AnnulusSpec::ring(GeneralizedCircle::circle(0.3, 0.1), GeneralizedCircle::circle(0.0, 1.0));
    const auto core = find_separating_circle(ring);
    REQUIRE(core.has_value());
    CHECK(separates(sample_boundaries(ring), *core, 1e-9));

    // generic search on a ring sampling
    const auto searched = search_separating_circle(sample_boundaries(ring));
    REQUIRE(searched.has_value());
    CHECK(separates(sample_boundaries(ring), *searched, 1e-9));

    // wide Joukowski annulus: found; thin ones: not found, matching brute force
    const AnnulusSpec wide = AnnulusSpec::mapped(3.0, LaurentMap::joukowski(0.1));
    const auto found = find_separating_circle(wide);
    REQUIRE(found.has_value());
    CHECK(separates(sample_boundaries(wide), *found, 1e-9));
    CHECK(brute_force_circle_exists(sample_boundaries(wide)));

    for (auto [r, c] : {std::pair{1.5, 0.43}, std::pair{1.2, 1.5}}) {
        const AnnulusSpec thin = AnnulusSpec::mapped(r, LaurentMap::joukowski(c));
        CHECK_FALSE(find_separating_circle(thin).has_value());
        CHECK_FALSE(brute_force_circle_exists(sample_boundaries(thin)));
    }

    // determinism
    const auto again = find_separating_circle(wide);
    CHECK(geom::approx_equal(*again, *found, 0.0));
}

TEST_CASE("lemma4_ratio") {
    for (int d = 1; d <= 4; ++d) {
        const auto m = lemma4_ratio(RationalMap::power(d), AnnulusSpec::round(2.0), AnnulusSpec::round(std::pow(2.0, d)));
        CHECK(m.ratio == doctest::Approx(1.0 / d).epsilon(1e-12));
        CHECK(m.core_winding == d);
    }

    const AnnulusSpec a = AnnulusSpec::round(2.5);
    CHECK(lemma4_ratio(RationalMap::identity(), a, a).ratio == doctest::Approx(1.0));

    // (z + c/z)^2 = g(z^2) with g(w) = w + 2c + c^2/w
    const double r = 2.0, c = 0.15;
    const AnnulusSpec jouk = AnnulusSpec::mapped(r, LaurentMap::joukowski(c));
    const AnnulusSpec image = AnnulusSpec::mapped(r * r, LaurentMap({{1, 1.0}, {0, 2.0 * c}, {-1, c * c}}));
    const auto m = lemma4_ratio(RationalMap::power(2), jouk, image);
    CHECK(m.numeric);
    CHECK(m.ratio > 0.0);
    CHECK(m.ratio == doctest::Approx(0.5).epsilon(0.02));

    // image misses the hole, or leaves the annulus
    const RationalMap off{{2.0, 0.1}, {1.0}};
    CHECK_THROWS_AS(lemma4_ratio(off, a, AnnulusSpec::round(3.0)), std::invalid_argument);
    const RationalMap far{{6.0, 1.0}, {1.0}};
    CHECK_THROWS_AS(lemma4_ratio(far, a, AnnulusSpec::round(3.0)), std::invalid_argument);
}

TEST_CASE("annulus JSON descriptors") {
    const geom::Json round = geom::Json::parse(R"({"round": {"r": 23.1407}})");
    const AnnulusSpec a = annulus_from_json(round);
    CHECK(modulus(a) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(to_json(a) == round);

    const geom::Json mapped = geom::Json::parse(R"({"mapped": {"r": 3.0, "laurent": {"-1": [0.1, 0.0], "1": [1.0, 0.0]}}})");
    const AnnulusSpec m = annulus_from_json(mapped);
    CHECK(m.is_mapped());
    CHECK(to_json(m) == mapped);

    const geom::Json ring = geom::Json::parse(
        R"({"ring": {"inner": {"center": [0.3, 0.0], "radius": 0.1}, "outer": {"center": [0.0, 0.0], "radius": 1.0}}})");
    CHECK(annulus_from_json(ring).is_ring());

    CHECK_THROWS(annulus_from_json(geom::Json::parse(R"({"square": {}})")));
    CHECK_THROWS(annulus_from_json(geom::Json::parse(R"({"mapped": {"r": 3.0, "laurent": {"x": [1, 0]}}})")));

    const std::string svg = render_svg(sample_boundaries(a, 16), find_separating_circle(a));
    CHECK(svg.find("separating-circle") != std::string::npos);
    CHECK(svg.find("annulus-outer") != std::string::npos);
}

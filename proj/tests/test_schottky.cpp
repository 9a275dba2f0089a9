#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "klein/schottky.hpp"
#include "test_support.hpp"

using namespace klein;
using namespace klein::schottky;
using geom::MoebiusKind;

namespace {

SchottkyConfiguration real_axis_config(double radius = 1.0) {
    return SchottkyConfiguration({pairing_from_circles_unchecked(-6.0, radius, -2.0, radius, 0.0),
                                  pairing_from_circles_unchecked(2.0, radius, 6.0, radius, 0.0)});
}

// Random genus-g configuration: 2g well-separated circles.
SchottkyConfiguration random_config(std::mt19937_64& rng, int g) {
    std::uniform_real_distribution<double> u(-10.0, 10.0), r(0.3, 1.5), angle(0.0, 2.0 * std::numbers::pi);
    for (;;) {
        std::vector<Complex> centers;
        std::vector<double> radii;
        for (int i = 0; i < 2 * g; ++i) {
            centers.emplace_back(u(rng), u(rng));
            radii.push_back(r(rng));
        }
        bool ok = true;
        for (int i = 0; i < 2 * g && ok; ++i)
            for (int j = i + 1; j < 2 * g && ok; ++j)
                ok = std::abs(centers[i] - centers[j]) > radii[i] + radii[j] + 0.2;
        if (!ok) continue;
        std::vector<CirclePairing> pairings;
        for (int j = 0; j < g; ++j)
            pairings.push_back(
                pairing_from_circles(centers[2 * j], radii[2 * j], centers[2 * j + 1], radii[2 * j + 1], angle(rng)));
        return SchottkyConfiguration(std::move(pairings));
    }
}

}  // namespace

TEST_CASE("pairing_from_circles examples") {
    const CirclePairing p = pairing_from_circles(0.0, 1.0, 10.0, 1.0, 0.0);
    CHECK(std::abs(p.map(Complex(1.0)) - 11.0) < 1e-12);
    CHECK(std::abs(p.map(Complex(0.0, 1.0)) - Complex(10.0, -1.0)) < 1e-12);

    const CirclePairing q = pairing_from_circles(0.0, 2.0, Complex(0.0, 8.0), 1.0, 0.0);
    CHECK(std::abs(q.map(Complex(2.0)) - Complex(1.0, 8.0)) < 1e-12);

    const CirclePairing twisted = pairing_from_circles(0.0, 2.0, Complex(0.0, 8.0), 1.0, std::numbers::pi);
    CHECK(std::abs(twisted.map(Complex(2.0)) - Complex(-1.0, 8.0)) < 1e-12);
    CHECK(geom::approx_equal(geom::apply(twisted.map, twisted.c), geom::apply(q.map, q.c), 1e-12));
    CHECK(pairing_circle_error(twisted) < 1e-12);
    CHECK(pairing_orientation_ok(twisted));
}

TEST_CASE("pairing_from_circles errors") {
    CHECK_THROWS_AS(pairing_from_circles(0.0, 1.0, 1.5, 1.0, 0.0), std::invalid_argument);  // overlap
    CHECK_THROWS_AS(pairing_from_circles(0.0, 1.0, 2.0, 1.0, 0.0), std::invalid_argument);  // tangent
    CHECK_THROWS_AS(pairing_from_circles(0.0, 0.0, 5.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(pairing_from_circles(0.0, 1.0, 0.0, 3.0, 0.0), std::invalid_argument);  // nested
}

TEST_CASE("make_pairing re-checks general maps") {
    const geom::GeneralizedCircle c = geom::GeneralizedCircle::circle(0.0, 1.0);
    const geom::GeneralizedCircle cp = geom::GeneralizedCircle::circle(10.0, 1.0);
    CHECK_NOTHROW(make_pairing(c, cp, geom::MoebiusMap(10.0, 1.0, 1.0, 0.0)));
    // translation carries c to cp but keeps the exterior outside
    CHECK_THROWS_AS(make_pairing(c, cp, geom::MoebiusMap::translation(10.0)), std::invalid_argument);
    CHECK_THROWS_AS(make_pairing(c, cp, geom::MoebiusMap::translation(9.0)), std::invalid_argument);
}

TEST_CASE("verify_classical") {
    SUBCASE("genus-2 real-axis configuration passes") {
        const VerificationReport r = verify_classical(real_axis_config());
        CHECK(r.passed());
        // inversive distance between C1 (-6) and C1' (-2): (16 - 2) / 2 = 7
        CHECK(r.find("circles_disjoint")->measured["min_inversive_distance"].get<double>() ==
              doctest::Approx(7.0).epsilon(1e-12));
    }
    SUBCASE("overlapping radius 2.5 fails condition (i) only") {
        const VerificationReport r = verify_classical(real_axis_config(2.5));
        CHECK_FALSE(r.passed());
        CHECK_FALSE(r.find("circles_disjoint")->pass);
        CHECK(r.find("pairing_maps_circles")->pass);
        CHECK(r.find("pairing_orientation")->pass);
        CHECK_FALSE(r.find("images_of_D_disjoint")->pass);
    }
    SUBCASE("rank below two") {
        CHECK_THROWS_AS(SchottkyConfiguration({pairing_from_circles(0.0, 1.0, 5.0, 1.0, 0.0)}), std::invalid_argument);
    }
    SUBCASE("a reflected map fails orientation") {
        auto bad = real_axis_config().pairings();
        bad[0].map = geom::MoebiusMap::translation(4.0);
        const VerificationReport r = verify_classical(SchottkyConfiguration(bad));
        CHECK(r.find("circles_disjoint")->pass);
        CHECK(r.find("pairing_maps_circles")->pass);
        CHECK_FALSE(r.find("pairing_orientation")->pass);
    }
}

TEST_CASE("enumerate_words counts and order") {
    const SchottkyConfiguration cfg = real_axis_config();
    CHECK(enumerate_words(cfg, 1).size() == 5);
    CHECK(enumerate_words(cfg, 2).size() == 17);
    std::mt19937_64 rng(1);
    CHECK(enumerate_words(random_config(rng, 3), 2).size() == 37);
    CHECK(word_count(3, 2) == 37);

    const auto words = enumerate_words(cfg, 2);
    CHECK(words[0].word.empty());
    CHECK(words[1].word == ReducedWord{1});
    CHECK(words[2].word == ReducedWord{2});
    CHECK(words[3].word == ReducedWord{-1});
    CHECK(words[4].word == ReducedWord{-2});
    CHECK(words[5].word == ReducedWord{1, 1});
    CHECK(words[6].word == ReducedWord{1, 2});
    CHECK(words[7].word == ReducedWord{1, -2});  // a1 A1 is skipped
    for (const auto& wm : words)
        for (std::size_t i = 1; i < wm.word.size(); ++i) CHECK(wm.word[i] != -wm.word[i - 1]);

    // maps compose left to right as written
    const auto a1 = letter_map(cfg, 1), a2 = letter_map(cfg, 2);
    CHECK(geom::approx_equal(words[6].map, a1 * a2));

    CHECK_THROWS_AS(enumerate_words(cfg, 12, 1000), std::length_error);
    CHECK(word_count(2, 1000) == std::numeric_limits<std::size_t>::max());
}

TEST_CASE("limit points") {
    const SchottkyConfiguration cfg = real_axis_config();
    CHECK(limit_points(cfg, 0).empty());

    const LimitSample one = limit_points(cfg, 1);
    REQUIRE(one.size() == 4);
    for (const LimitPoint& lp : one) {
        const auto& disk = letter_disk(cfg, lp.word.front());
        CHECK(std::abs(lp.point.value() - disk.center()) < disk.radius());
        CHECK(lp.radius == doctest::Approx(1.0));
    }

    // strict nesting along prefix chains up to length 4
    const LimitSample four = limit_points(cfg, 4);
    CHECK(four.size() == 4 * 3 * 3 * 3);
    for (const LimitPoint& lp : four) {
        double previous = INFINITY;
        for (std::size_t k = 1; k <= lp.word.size(); ++k) {
            const ReducedWord prefix(lp.word.begin(), lp.word.begin() + static_cast<long>(k));
            const auto disk = image_disk(cfg, prefix);
            CHECK(std::abs(lp.point.value() - disk.center()) < disk.radius());
            CHECK(disk.radius() < previous);
            previous = disk.radius();
        }
    }
    for (std::size_t i = 0; i < four.size(); ++i)
        for (std::size_t j = i + 1; j < four.size(); ++j)
            CHECK(geom::chordal_distance(four[i].point, four[j].point) > 1e-12);

    CHECK_THROWS_AS(limit_points(real_axis_config(2.5), 2), std::invalid_argument);
}

TEST_CASE("fundamental domain membership") {
    const SchottkyConfiguration cfg = real_axis_config();
    CHECK(in_fundamental_domain(cfg, geom::SpherePoint(Complex(0.0, 10.0))));
    CHECK(in_fundamental_domain(cfg, geom::SpherePoint::infinity()));
    CHECK_FALSE(in_fundamental_domain(cfg, geom::SpherePoint(-6.0)));
    CHECK_FALSE(in_fundamental_domain(cfg, geom::SpherePoint(-5.0)));  // on C_1
    CHECK(in_fundamental_domain(cfg, geom::SpherePoint(-4.9)));
}

TEST_CASE("Koebe symmetric configurations") {
    const std::vector<Complex> centers{-6.0, -2.0, 2.0, 6.0};
    const std::vector<double> radii{1.0, 1.0, 1.0, 1.0};
    const SchottkyConfiguration cfg = koebe_symmetric_config(2, centers, radii);
    CHECK(verify_classical(cfg).passed());
    CHECK(is_conjugation_symmetric(cfg));

    const std::vector<Complex> off{-6.0, Complex(-2.0, 1.0), 2.0, 6.0};
    CHECK_THROWS_AS(koebe_symmetric_config(2, off, radii), std::invalid_argument);

    const std::vector<Complex> c2{-8.0, -3.0, 3.0, 8.0};
    const std::vector<double> r2{1.0, 1.0, 2.0, 2.0};
    const SchottkyConfiguration cfg2 = koebe_symmetric_config(2, c2, r2);
    CHECK(verify_classical(cfg2).passed());
    CHECK(is_conjugation_symmetric(cfg2));

    const std::vector<double> big{1.0, 1.0, 3.5, 3.5};
    CHECK_THROWS_AS(koebe_symmetric_config(2, c2, big), std::invalid_argument);

    std::mt19937_64 rng(8);
    CHECK_FALSE(is_conjugation_symmetric(random_config(rng, 2)));
}

TEST_CASE("properties on random verified configurations") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 6; ++trial) {
        const int g = 2 + trial % 2;
        const SchottkyConfiguration cfg = random_config(rng, g);
        REQUIRE(verify_classical(cfg).passed());
        CHECK(quotient_euler_characteristic(cfg) == 2 - 2 * g);
        for (const auto& p : cfg.pairings()) CHECK(geom::classify(p.map) == MoebiusKind::loxodromic);

        const auto words = enumerate_words(cfg, g == 2 ? 4 : 3);
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = i + 1; j < words.size(); ++j)
                REQUIRE_FALSE(geom::approx_equal(words[i].map, words[j].map, 1e-9));

        // w(D) lies in the disk of the leftmost letter
        for (const auto& wm : words) {
            if (wm.word.empty()) continue;
            const auto& disk = letter_disk(cfg, wm.word.front());
            const geom::SpherePoint image = wm.map(geom::SpherePoint::infinity());
            REQUIRE(image.is_finite());
            CHECK(std::abs(image.value() - disk.center()) < disk.radius());
        }
    }
}

TEST_CASE("json and svg") {
    const geom::Json j = geom::Json::parse(R"({"genus": 2, "pairings": [
        {"c": {"center": [-6, 0], "radius": 1}, "c_prime": {"center": [-2, 0], "radius": 1}, "theta": 0},
        {"c": {"center": [2, 0], "radius": 1}, "c_prime": {"center": [6, 0], "radius": 1}, "theta": 0}]})");
    const SchottkyConfiguration cfg = config_from_json(j);
    CHECK(verify_classical(cfg).passed());
    const SchottkyConfiguration again = config_from_json(to_json(cfg));
    CHECK(geom::approx_equal(again.pairings()[1].map, cfg.pairings()[1].map));

    geom::Json wrong = j;
    wrong["genus"] = 3;
    CHECK_THROWS(config_from_json(wrong));

    const std::string svg = render_svg(cfg, limit_points(cfg, 2));
    auto count = [&](const std::string& needle) {
        std::size_t n = 0;
        for (std::size_t pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1)) ++n;
        return n;
    };
    CHECK(count("<path") == 4);
    CHECK(count("class=\"limit-point\"") == 12);
    CHECK(svg == render_svg(cfg, limit_points(cfg, 2)));
}

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "klein/belyi.hpp"
#include "klein/cli.hpp"
#include "klein/schottky.hpp"

namespace klein::cli {

namespace {

using geom::GeneralizedCircle;
using geom::MoebiusMap;
constexpr double kPi = std::numbers::pi;

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    Complex gaussian(double scale = 1.0) {
        std::normal_distribution<double> n(0.0, scale);
        return {n(rng_), n(rng_)};
    }
    MoebiusMap moebius() {
        for (;;) {
            const Complex a = gaussian(), b = gaussian(), c = gaussian(), d = gaussian();
            if (std::abs(a * d - b * c) > 0.1) return {a, b, c, d};
        }
    }
    GeneralizedCircle circle() { return GeneralizedCircle::circle(gaussian(2.0), uniform(0.2, 3.0)); }
    /// Inner circle strictly inside a random outer one.
    annulus::CircleRing ring() {
        const Complex c2 = gaussian();
        const double r2 = uniform(0.5, 2.5);
        const double r1 = r2 * uniform(0.05, 0.85);
        const Complex c1 = c2 + std::polar((r2 - r1) * uniform(0.0, 0.95), uniform(0.0, 2.0 * kPi));
        return {GeneralizedCircle::circle(c1, r1), GeneralizedCircle::circle(c2, r2)};
    }
    /// Random ring of the given modulus: the ratio of radii is drawn, then the
    /// center offset solved from the inversive distance cosh(2 pi m).
    annulus::CircleRing ring_with_modulus(double m) {
        const double delta = std::cosh(2.0 * kPi * m);
        const double k = (delta - std::sqrt(delta * delta - 1.0)) * uniform(0.05, 1.0);
        const double r2 = uniform(0.5, 2.5), r1 = k * r2;
        const double offset = r2 * std::sqrt(std::max(0.0, k * k + 1.0 - 2.0 * k * delta));
        const Complex c2 = gaussian();
        return {GeneralizedCircle::circle(c2 + std::polar(offset, uniform(0.0, 2.0 * kPi)), r1),
                GeneralizedCircle::circle(c2, r2)};
    }
    /// A circle enclosing disk (c_in, r_in) inside disk (c_out, r_out).
    GeneralizedCircle between(Complex c_in, double r_in, Complex c_out, double r_out) {
        // moving the center by less than half the slack keeps a nonempty radius range
        const double slack = r_out - r_in - std::abs(c_in - c_out);
        const Complex c = c_in + std::polar(slack * uniform(0.0, 0.4), uniform(0.0, 2.0 * kPi));
        const double lo = std::abs(c - c_in) + r_in, hi = r_out - std::abs(c - c_out);
        return GeneralizedCircle::circle(c, lo + (hi - lo) * uniform(0.05, 0.95));
    }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

VerificationReport moebius_suite(const RunConfig& cfg) {
    VerificationReport r("moebius");
    Sampler s(cfg.seed);
    double det = 0.0, group = 0.0, point_action = 0.0, inversive = 0.0;
    int kind_mismatches = 0;
    for (int i = 0; i < 100; ++i) {
        const MoebiusMap m = s.moebius(), g = s.moebius();
        det = std::max(det, std::abs(m.determinant() - 1.0));
        group = std::max(group, geom::distance_to_identity(m * m.inverse()));
        if (geom::classify(g * m * g.inverse()) != geom::classify(m)) ++kind_mismatches;

        const GeneralizedCircle c = s.circle(), c2 = s.circle();
        const GeneralizedCircle image = geom::apply(m, c);
        for (Complex z : c.sample(20)) {
            const geom::SpherePoint w = m(geom::SpherePoint(z));
            if (w.is_infinite()) continue;
            const double scale = image.is_line() ? 1.0 : std::max(1.0, image.radius());
            point_action = std::max(point_action, image.distance(w.value()) / scale);
        }
        const double before = geom::inversive_distance(c, c2);
        const double after = geom::inversive_distance(image, geom::apply(m, c2));
        inversive = std::max(inversive, std::abs(before - after) / std::max(1.0, before));
    }
    r.add("determinant_normalization", det < 1e-12, {{"max_error", det}}, 1e-12);
    r.add("group_law", group < 1e-12, {{"max_error", group}}, 1e-12);
    r.add("circle_point_action", point_action < 1e-9, {{"max_relative_distance", point_action}}, 1e-9);
    r.add("inversive_distance_invariance", inversive < 1e-9, {{"max_relative_error", inversive}}, 1e-9);
    r.add("classification_conjugation", kind_mismatches == 0, {{"mismatches", kind_mismatches}});
    return r;
}

schottky::SchottkyConfiguration real_axis(double radius) {
    using schottky::pairing_from_circles_unchecked;
    return schottky::SchottkyConfiguration({pairing_from_circles_unchecked(-6.0, radius, -2.0, radius, 0.0),
                                            pairing_from_circles_unchecked(2.0, radius, 6.0, radius, 0.0)});
}

schottky::SchottkyConfiguration random_configuration(Sampler& s, int g) {
    for (;;) {
        std::vector<Complex> centers;
        std::vector<double> radii;
        for (int i = 0; i < 2 * g; ++i) {
            centers.emplace_back(s.uniform(-10.0, 10.0), s.uniform(-10.0, 10.0));
            radii.push_back(s.uniform(0.3, 1.5));
        }
        bool ok = true;
        for (int i = 0; i < 2 * g && ok; ++i)
            for (int j = i + 1; j < 2 * g && ok; ++j)
                ok = std::abs(centers[i] - centers[j]) > radii[i] + radii[j] + 0.2;
        if (!ok) continue;
        std::vector<schottky::CirclePairing> pairings;
        for (int j = 0; j < g; ++j)
            pairings.push_back(schottky::pairing_from_circles(centers[2 * j], radii[2 * j], centers[2 * j + 1],
                                                              radii[2 * j + 1], s.uniform(0.0, 2.0 * kPi)));
        return schottky::SchottkyConfiguration(std::move(pairings));
    }
}

VerificationReport schottky_suite(const RunConfig& cfg) {
    VerificationReport r("schottky");
    const Json real = schottky::to_json(real_axis(1.0));
    const Outcome good = run_schottky(real, cfg);
    for (const Check& c : good.report.checks()) r.add("real_axis." + c.name, c.pass, c.measured, c.tolerance, c.note);

    const VerificationReport bad = schottky::verify_classical(real_axis(2.5), cfg.tolerance);
    const bool only_i = !bad.find("circles_disjoint")->pass && bad.find("pairing_maps_circles")->pass &&
                        bad.find("pairing_orientation")->pass;
    r.add("overlap_fails_condition_i_only", only_i,
          {{"circles_disjoint", bad.find("circles_disjoint")->pass},
           {"pairing_maps_circles", bad.find("pairing_maps_circles")->pass},
           {"pairing_orientation", bad.find("pairing_orientation")->pass}});

    Sampler s(cfg.seed + 1);
    int verified = 0, loxodromic = 0, euler_ok = 0, duplicates = 0, total = 0;
    const int len = std::min(cfg.max_word_len, 4);
    for (int trial = 0; trial < 10; ++trial) {
        const int g = 2 + trial % 2;
        const auto sc = random_configuration(s, g);
        ++total;
        if (schottky::verify_classical(sc, cfg.tolerance).passed()) ++verified;
        if (std::all_of(sc.pairings().begin(), sc.pairings().end(), [](const auto& p) {
                return geom::classify(p.map) == geom::MoebiusKind::loxodromic;
            }))
            ++loxodromic;
        if (schottky::quotient_euler_characteristic(sc, cfg.tolerance) == 2 - 2 * g) ++euler_ok;
        const auto words = schottky::enumerate_words(sc, len);
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = i + 1; j < words.size(); ++j)
                if (geom::approx_equal(words[i].map, words[j].map, 1e-9)) ++duplicates;
    }
    r.add("random_configurations_verify", verified == total, {{"verified", verified}, {"total", total}});
    r.add("random_pairings_loxodromic", loxodromic == total, {{"loxodromic", loxodromic}, {"total", total}});
    r.add("random_quotient_genus", euler_ok == total, {{"matching", euler_ok}, {"total", total}});
    r.add("words_faithful", duplicates == 0, {{"max_len", len}, {"duplicates", duplicates}});
    return r;
}

VerificationReport lemmas_suite(const RunConfig& cfg) {
    using namespace annulus;
    VerificationReport r("lemmas");
    const AnnulusOptions opt = cfg.annulus_options();

    {
        const double err = std::abs(modulus_round(std::exp(kPi)) - 1.0);
        r.add("modulus_definition", err <= 1e-12, {{"error", err}}, 1e-12);
    }

    Sampler s(cfg.seed + 2);
    {
        double worst = 0.0;
        bool oriented = true;
        for (int i = 0; i < 100; ++i) {
            const double rho = 1.0 + 9.0 * (1.0 - s.uniform(0.0, 1.0));  // (1, 10]
            const int d = 1 + static_cast<int>(s.engine()() % 6);
            const CoverRelation rel = cover_modulus_relation(rho, d);
            worst = std::max(worst, std::abs(modulus_round(std::pow(rho, d)) - d * modulus_round(rho)));
            oriented = oriented && rel.target_is_d_times_domain && (d == 1 || !rel.domain_is_d_times_target);
        }
        r.add("cover_multiplicativity", worst <= 1e-12 && oriented, {{"max_error", worst}}, 1e-12,
              "the target of z -> z^d has d times the modulus of the domain; the statement mod(A) = d mod(B) "
              "reads with A the target");
    }

    {
        int violations = 0, cases = 0;
        double worst = -INFINITY;
        for (; cases < 500; ++cases) {
            const CircleRing a = s.ring();
            const GeneralizedCircle b_in = s.between(a.inner.center(), a.inner.radius(), a.outer.center(),
                                                     a.outer.radius());
            const GeneralizedCircle b_out = s.between(b_in.center(), b_in.radius(), a.outer.center(),
                                                      a.outer.radius());
            const GrotzschResult g = grotzsch_check(AnnulusSpec::ring(a.inner, a.outer), {b_in, b_out}, opt);
            worst = std::max(worst, g.mod_inner - g.mod_outer);
            if (!g.holds || g.mod_inner > g.mod_outer + 1e-9) ++violations;
        }
        r.add("grotzsch_closed_form", violations == 0,
              {{"cases", cases}, {"violations", violations}, {"max_excess", worst}}, 1e-9);
    }
    {
        int violations = 0, cases = 0;
        for (; cases < 50; ++cases) {
            const double rr = s.uniform(2.0, 4.0);
            const Complex c = std::polar(s.uniform(0.0, 0.8) / (rr * rr), s.uniform(0.0, 2.0 * kPi));
            const AnnulusSpec a = AnnulusSpec::mapped(rr, LaurentMap::joukowski(c), cfg.boundary_samples);
            const double inner_reach = 1.0 / rr + std::abs(c) * rr, outer_gap = rr - std::abs(c) / rr;
            const double lo = inner_reach + (outer_gap - inner_reach) * s.uniform(0.0, 0.3);
            const double hi = outer_gap - (outer_gap - inner_reach) * s.uniform(0.0, 0.3);
            const GrotzschResult g =
                grotzsch_check(a, {GeneralizedCircle::circle(0.0, lo), GeneralizedCircle::circle(0.0, hi)}, opt);
            if (!g.holds || !g.numeric) ++violations;
        }
        r.add("grotzsch_numeric", violations == 0, {{"cases", cases}, {"violations", violations}},
              opt.numeric_tolerance);
    }

    {
        int cases = 0, found = 0, searched = 0;
        double min_clearance = INFINITY, min_modulus = INFINITY;
        for (; cases < 200; ++cases) {
            const CircleRing ring = s.ring_with_modulus(s.uniform(0.5, 1.5));
            min_modulus = std::min(min_modulus, modulus_circle_ring(ring));
            const AnnulusSpec spec = AnnulusSpec::ring(ring.inner, ring.outer);
            const BoundarySampling b = sample_boundaries(spec, kDefaultBoundarySamples);
            if (const auto c = find_separating_circle(spec, opt)) {
                const double clearance = separation_clearance(b, *c);
                min_clearance = std::min(min_clearance, clearance);
                if (clearance > 1e-9) ++found;
            }
            if (const auto c = search_separating_circle(b, opt.tolerance)) {
                const double clearance = separation_clearance(b, *c);
                min_clearance = std::min(min_clearance, clearance);
                if (clearance > 1e-9) ++searched;
            }
        }
        r.add("separating_circle", found == cases && searched == cases,
              {{"cases", cases}, {"closed_form_found", found}, {"search_found", searched},
               {"min_clearance", min_clearance}, {"min_modulus", min_modulus}},
              1e-9);
    }

    {
        int within = 0, decreasing = 0, cases = 0;
        double worst = 0.0;
        for (; cases < 20; ++cases) {
            AnnulusSpec spec = AnnulusSpec::round(2.0);
            if (cases < 10) {
                spec = AnnulusSpec::round(s.uniform(1.5, 6.0));
            } else {
                const double ro = s.uniform(1.0, 2.0);
                const GeneralizedCircle outer = GeneralizedCircle::circle(s.gaussian(), ro);
                const double ri = ro * s.uniform(0.15, 0.5);
                const Complex off = std::polar((ro - ri) * s.uniform(0.0, 0.4), s.uniform(0.0, 2.0 * kPi));
                spec = AnnulusSpec::ring(GeneralizedCircle::circle(outer.center() + off, ri), outer);
            }
            const double exact = *closed_form_modulus(spec);
            const BoundarySampling b = sample_boundaries(spec, cfg.boundary_samples);
            const double fine = std::abs(modulus_numeric(b, opt.grid_h) - exact) / exact;
            const double coarse = std::abs(modulus_numeric(b, 2.0 * opt.grid_h) - exact) / exact;
            worst = std::max(worst, fine);
            if (fine < opt.numeric_tolerance) ++within;
            // concentric cases are exact up to roundoff at every step
            if (fine < coarse || std::max(fine, coarse) < 1e-8) ++decreasing;
        }
        r.add("numeric_modulus_oracle", within == cases && decreasing == cases,
              {{"cases", cases}, {"within_tolerance", within}, {"refinement_improves", decreasing},
               {"max_relative_error", worst}},
              opt.numeric_tolerance);
    }

    {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const CircleRing ring = s.ring();
            const MoebiusMap m = s.moebius();
            // keep the pole outside the outer disk so the image stays a bounded ring
            if (m.c() != 0.0 && std::abs(-m.d() / m.c() - ring.outer.center()) <= ring.outer.radius() * 1.1) continue;
            const double before = modulus_circle_ring(ring);
            const double after = modulus_circle_ring(geom::apply(m, ring.inner), geom::apply(m, ring.outer));
            worst = std::max(worst, std::abs(after - before));
        }
        r.add("ring_modulus_moebius_invariance", worst < 1e-9, {{"max_error", worst}}, 1e-9);
    }
    return r;
}

std::vector<belyi::MonodromyTriple> triple_corpus(Sampler& s, int count) {
    using belyi::MonodromyTriple;
    using belyi::Permutation;
    std::vector<MonodromyTriple> out{
        MonodromyTriple::trivial(),
        {Permutation::rotation(5, 1), Permutation::rotation(5, 1), Permutation::rotation(5, -2)}};
    while (static_cast<int>(out.size()) < count) {
        const int d = 2 + static_cast<int>(s.engine()() % 7);
        std::vector<int> a(static_cast<std::size_t>(d)), b(static_cast<std::size_t>(d));
        std::iota(a.begin(), a.end(), 0);
        std::iota(b.begin(), b.end(), 0);
        std::shuffle(a.begin(), a.end(), s.engine());
        std::shuffle(b.begin(), b.end(), s.engine());
        const Permutation p(a), q(b);
        MonodromyTriple t(p, q, (p * q).inverse());
        if (belyi::validate_triple(t).ok && belyi::genus(t) <= 3) out.push_back(t);
    }
    return out;
}

VerificationReport belyi_suite(const RunConfig& cfg) {
    using namespace belyi;
    VerificationReport r("belyi");

    {
        const double deck = r_deck_error(1000, cfg.seed);
        r.add("r_deck_invariance", deck < 1e-9, {{"max_chordal_error", deck}}, 1e-9);
        const Complex w = std::polar(1.0, 2.0 * kPi / 3.0);
        double worst = 0.0;
        const auto crit = r_critical_points();
        for (const CriticalPoint& c : crit) {
            double best = INFINITY;
            for (Complex v : {Complex(1.0), w, w * w})
                best = std::min(best, geom::chordal_distance(c.value, geom::SpherePoint(v)));
            worst = std::max(worst, best);
        }
        r.add("r_critical_values", worst < 1e-9, {{"critical_points", crit.size()}, {"max_chordal_distance", worst}},
              1e-9);
    }

    {
        const MonodromyTriple& t = r_constellation().triple;
        std::vector<std::vector<int>> types{t.s1.cycle_type(), t.sw.cycle_type(), t.sw2.cycle_type()};
        std::sort(types.begin(), types.end());
        const std::vector<std::vector<int>> expected{{2, 2, 2}, {2, 2, 2}, {3, 3}};
        r.add("r_constellation",
              t.degree() == 6 && types == expected && validate_triple(t).ok && genus(t) == 0,
              {{"degree", t.degree()}, {"cycle_types", types}, {"triple", to_json(t)}});
    }

    Sampler s(cfg.seed + 3);
    const auto corpus = triple_corpus(s, 12);
    {
        int preserved = 0, euler = 0, dessins = 0;
        for (const MonodromyTriple& t : corpus) {
            const int g = genus(t);
            MonodromyTriple current = t;
            bool ok = true;
            for (int stage = 0; stage <= 2; ++stage) {
                if (stage > 0) {
                    const MonodromyTriple next = refine(current);
                    ok = ok && next.degree() == 6 * current.degree() && genus(next) == g;
                    current = next;
                }
                const Dessin d = build_dessin(current);
                ++dessins;
                if (d.num_edges() == 3 * current.degree() &&
                    d.num_vertices - d.num_edges() + d.num_faces == 2 - 2 * g)
                    ++euler;
            }
            if (ok) ++preserved;
        }
        const int n = static_cast<int>(corpus.size());
        r.add("refinement_preserves_genus", preserved == n, {{"triples", n}, {"preserved", preserved}, {"stages", 2}});
        r.add("triangulation_euler", euler == dessins, {{"dessins", dessins}, {"matching", euler}});
    }

    {
        const MonodromyTriple five{Permutation::rotation(5, 1), Permutation::rotation(5, 1),
                                   Permutation::rotation(5, -2)};
        LoopSearchOptions opt;
        opt.refine_budget = std::min(2, cfg.refine_max);
        const LoopSearchResult res = find_disjoint_loops(build_dessin(five), genus(five), opt);
        r.add("loop_search", res.found && genus(five) == 2,
              {{"refinements", res.refinements}, {"degree", res.dessin.degree()}, {"loops", res.loops.cycles.size()}});
        if (res.found) r.merge(verify_loop_set(res.dessin, res.loops));
    }
    return r;
}

}  // namespace

Outcome run_verify(const std::string& suite, const RunConfig& cfg) {
    static const std::vector<std::string> kSuites{"moebius", "schottky", "lemmas", "belyi"};
    if (suite != "all" && std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
        throw UsageError("unknown suite '" + suite + "'");
    cfg.validate();

    auto run_one = [&](const std::string& name) {
        if (name == "moebius") return moebius_suite(cfg);
        if (name == "schottky") return schottky_suite(cfg);
        if (name == "lemmas") return lemmas_suite(cfg);
        return belyi_suite(cfg);
    };
    Outcome out{VerificationReport(suite)};
    if (suite == "all") {
        for (const std::string& name : kSuites) out.report.merge(run_one(name));
    } else {
        out.report = run_one(suite);
    }
    out.data = {{"seed", cfg.seed},
                {"tolerance", cfg.tolerance},
                {"grid_h", cfg.grid_h},
                {"boundary_samples", cfg.boundary_samples},
                {"max_word_len", cfg.max_word_len},
                {"refine_max", cfg.refine_max}};
    return out;
}

}  // namespace klein::cli

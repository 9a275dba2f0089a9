#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "klein/belyi.hpp"
#include "klein/cli.hpp"
#include "klein/schottky.hpp"

namespace klein::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// Runs a parsing step, turning any failure into a usage error.
template <class F>
auto parse_input(const char* what, F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw UsageError(std::string("invalid ") + what + ": " + e.what());
    }
}

std::string cover_orientation_note() {
    return "for the degree-d cover z -> z^d of A_rho onto A_{rho^d} the target modulus is d times the domain "
           "modulus; the statement mod(A) = d mod(B) holds with A the target and B the domain";
}

}  // namespace

void RunConfig::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(tolerance)) throw UsageError("--tolerance must be positive");
    if (!positive(grid_h)) throw UsageError("--grid-h must be positive");
    if (boundary_samples < 3) throw UsageError("--boundary-samples must be at least 3");
    if (max_word_len < 1) throw UsageError("--max-word-len must be positive");
    if (refine_max < 1) throw UsageError("--refine-max must be positive");
    if (seed == 0) throw UsageError("--seed must be positive");
}

annulus::AnnulusOptions RunConfig::annulus_options() const {
    annulus::AnnulusOptions opt;
    opt.tolerance = tolerance;
    opt.grid_h = grid_h;
    opt.boundary_samples = boundary_samples;
    return opt;
}

Json Outcome::to_json() const {
    Json j = report.to_json();
    j["data"] = data;
    return j;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const Json::parse_error& e) {
        throw UsageError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

std::filesystem::path write_outcome(const Outcome& outcome, const std::string& stem, const RunConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw UsageError("cannot create output directory " + cfg.out_dir.string());
    const auto path = cfg.out_dir / (stem + ".json");
    std::ofstream(path) << outcome.to_json().dump(2) << '\n';
    if (cfg.svg && outcome.svg) std::ofstream(cfg.out_dir / (stem + ".svg")) << *outcome.svg;
    return path;
}

Outcome run_schottky(const Json& config, const RunConfig& cfg) {
    cfg.validate();
    using namespace schottky;
    const SchottkyConfiguration sc = parse_input("configuration", [&] { return config_from_json(config); });

    Outcome out{verify_classical(sc, cfg.tolerance)};
    out.data["configuration"] = to_json(sc);
    Json kinds = Json::array();
    bool loxodromic = true;
    for (const CirclePairing& p : sc.pairings()) {
        const geom::MoebiusKind kind = geom::classify(p.map, cfg.tolerance);
        loxodromic = loxodromic && kind == geom::MoebiusKind::loxodromic;
        kinds.push_back(std::string(geom::to_string(kind)));
    }
    out.report.add("pairings_loxodromic", loxodromic, {{"kinds", kinds}});

    LimitSample sample;
    if (out.report.passed()) {
        const auto words = enumerate_words(sc, cfg.max_word_len);
        out.report.add("word_count", words.size() == word_count(sc.genus(), cfg.max_word_len),
                       {{"max_len", cfg.max_word_len}, {"count", words.size()}});
        sample = limit_points(sc, cfg.max_word_len, cfg.tolerance);

        // each limit point sits inside every disk of its prefix chain, radii shrinking
        bool nested = true;
        double worst_ratio = 0.0;
        for (const LimitPoint& lp : sample) {
            double previous = INFINITY;
            for (std::size_t k = 1; k <= lp.word.size(); ++k) {
                const ReducedWord prefix(lp.word.begin(), lp.word.begin() + static_cast<std::ptrdiff_t>(k));
                const GeneralizedCircle disk = image_disk(sc, prefix);
                if (disk.is_line()) {
                    nested = false;
                    continue;
                }
                nested = nested && std::abs(lp.point.value() - disk.center()) < disk.radius() &&
                         disk.radius() < previous;
                if (std::isfinite(previous)) worst_ratio = std::max(worst_ratio, disk.radius() / previous);
                previous = disk.radius();
            }
        }
        out.report.add("prefix_nesting", nested,
                       {{"points", sample.size()}, {"max_radius_ratio", worst_ratio}});
        const int chi = quotient_euler_characteristic(sc, cfg.tolerance);
        out.report.add("quotient_euler_characteristic", chi == 2 - 2 * sc.genus(),
                       {{"euler_characteristic", chi}, {"genus", sc.genus()}});
        out.data["limit_points"] = to_json(sample);
    } else {
        out.data["limit_points"] = Json::array();
    }
    out.svg = render_svg(sc, sample);
    return out;
}

Outcome run_annulus(const Json& descriptor, const RunConfig& cfg) {
    cfg.validate();
    using namespace annulus;
    const AnnulusOptions opt = cfg.annulus_options();
    const AnnulusSpec spec = parse_input("annulus descriptor", [&] {
        return annulus_from_json(descriptor, cfg.boundary_samples);
    });
    const BoundarySampling sampling = sample_boundaries(spec, cfg.boundary_samples);

    Outcome out{VerificationReport("annulus")};
    out.data["descriptor"] = to_json(spec);
    const std::optional<double> closed = closed_form_modulus(spec);
    double numeric = NAN;
    try {
        numeric = modulus_numeric(sampling, cfg.grid_h);
    } catch (const GridError& e) {
        throw UsageError(std::string("--grid-h too coarse for this annulus: ") + e.what());
    }
    const double mod = closed.value_or(numeric);
    out.data["modulus"] = mod;
    out.data["modulus_closed_form"] = closed ? Json(*closed) : Json(nullptr);
    out.data["modulus_numeric"] = numeric;
    if (closed) {
        const double rel = std::abs(numeric - *closed) / *closed;
        out.report.add("numeric_matches_closed_form", rel < opt.numeric_tolerance,
                       {{"closed_form", *closed}, {"numeric", numeric}, {"relative_error", rel}},
                       opt.numeric_tolerance);
    }

    const auto circle = find_separating_circle(spec, opt);
    const double clearance = circle ? separation_clearance(sampling, *circle) : -INFINITY;
    out.data["separating_circle"] = circle ? geom::to_json(*circle) : Json(nullptr);
    {
        // a circle must exist above modulus 1/2; below it not finding one is allowed
        const bool found = circle && clearance > cfg.tolerance;
        Check& c = out.report.add("separating_circle", found || mod <= 0.5,
                                  {{"found", found},
                                   {"clearance", circle ? Json(clearance) : Json(nullptr)},
                                   {"modulus", mod}},
                                  cfg.tolerance);
        if (!found) c.note = "no separating circle found; modulus is at most 1/2";
    }

    {
        // the round annulus conformally equivalent to this one
        const double rho = spec.is_round() ? std::get<Round>(spec.kind()).r : std::exp(kPi * mod);
        const CoverRelation rel = cover_modulus_relation(rho, 2);
        out.report.add("cover_orientation", rel.target_is_d_times_domain && !rel.domain_is_d_times_target,
                       {{"rho", rho},
                        {"d", 2},
                        {"mod_domain", rel.mod_domain},
                        {"mod_target", rel.mod_target},
                        {"ratio", rel.ratio}},
                       nullptr, cover_orientation_note());
    }

    // monotonicity on a thinner ring around the separating circle
    if (circle && clearance > cfg.tolerance) {
        const Complex c0 = circle->center();
        const double r0 = circle->radius(), half = clearance / 2.0;
        const CircleRing inner{GeneralizedCircle::circle(c0, r0 - half), GeneralizedCircle::circle(c0, r0 + half)};
        const GrotzschResult g = grotzsch_check(spec, inner, opt);
        out.report.add("grotzsch", g.holds,
                       {{"mod_outer", g.mod_outer}, {"mod_inner", g.mod_inner}, {"numeric", g.numeric}},
                       g.numeric ? opt.numeric_tolerance : opt.tolerance);
    }

    if (spec.is_round()) {
        const double r = std::get<Round>(spec.kind()).r;
        const Lemma4Measurement m =
            lemma4_ratio(RationalMap::power(2), spec, AnnulusSpec::round(r * r), opt);
        out.report.add("square_map_ratio", std::abs(m.ratio - 0.5) < opt.tolerance,
                       {{"mod_domain", m.mod_a}, {"mod_target", m.mod_b}, {"ratio", m.ratio}, {"winding", m.core_winding}},
                       opt.tolerance);
    }
    out.svg = render_svg(sampling, circle);
    return out;
}

Outcome run_dessin(const Json& triple, int refine, bool find_loops, const RunConfig& cfg) {
    cfg.validate();
    using namespace belyi;
    if (refine > cfg.refine_max)
        throw UsageError("--refine " + std::to_string(refine) + " exceeds --refine-max " +
                         std::to_string(cfg.refine_max));
    MonodromyTriple t = parse_input("monodromy triple", [&] { return triple_from_json(triple); });

    Outcome out{VerificationReport("dessin")};
    out.data["input"] = to_json(t);
    const TripleDiagnostics diag = validate_triple(t);
    Check& valid = out.report.add("valid_triple", diag.ok, {{"problems", diag.problems}});
    for (const std::string& p : diag.problems) valid.note += (valid.note.empty() ? "" : "; ") + p;
    if (!diag.ok) return out;

    const int g = genus(t);
    Dessin dessin = build_dessin(t);
    auto add_stage = [&](int stage, int expected_degree) {
        const int chi = dessin.euler_characteristic();
        out.report.add("stage" + std::to_string(stage),
                       dessin.genus == g && dessin.degree() == expected_degree && chi == 2 - 2 * g &&
                           dessin.num_edges() == 3 * dessin.degree(),
                       {{"degree", dessin.degree()},
                        {"genus", dessin.genus},
                        {"V", dessin.num_vertices},
                        {"E", dessin.num_edges()},
                        {"F", dessin.num_faces},
                        {"euler_characteristic", chi},
                        {"cycle_types",
                         {t.s1.cycle_type(), t.sw.cycle_type(), t.sw2.cycle_type()}}});
    };
    add_stage(0, t.degree());
    for (int k = 1; k <= refine; ++k) {
        const int expected = 6 * t.degree();
        t = belyi::refine(t);
        dessin = build_dessin(t);
        add_stage(k, expected);
    }

    if (find_loops) {
        if (g < 2) throw UsageError("loop search needs genus at least 2, got " + std::to_string(g));
        LoopSearchOptions opt;
        opt.refine_budget = cfg.refine_max - std::max(refine, 0);
        const LoopSearchResult result = find_disjoint_loops(dessin, g, opt);
        Check& c = out.report.add("loop_search", result.found,
                                  {{"refinements", result.refinements}, {"degree", result.dessin.degree()}});
        if (result.found) {
            out.report.merge(verify_loop_set(result.dessin, result.loops));
            out.data["dessin"] = to_json(result.dessin, result.loops);
            out.svg = render_svg(result.dessin, &result.loops);
        } else {
            c.note = "search exhausted the refinement budget";
            out.data["dessin"] = to_json(result.dessin);
            out.svg = render_svg(result.dessin);
        }
    } else {
        out.data["dessin"] = to_json(dessin);
        out.svg = render_svg(dessin);
    }
    return out;
}

}  // namespace klein::cli

#include <iostream>

#include "CLI11.hpp"
#include "klein/cli.hpp"

namespace {

// Reads a descriptor given either inline or as a file path.
klein::Json descriptor_argument(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') {
        try {
            return klein::Json::parse(arg);
        } catch (const klein::Json::parse_error& e) {
            throw klein::cli::UsageError(std::string("malformed inline JSON: ") + e.what());
        }
    }
    return klein::cli::read_json_file(arg);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace klein::cli;
    CLI::App app{"Schottky groups, annulus moduli and dessins"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    RunConfig cfg;
    std::string out_dir = ".";
    app.add_option("--tolerance", cfg.tolerance, "geometric tolerance")->envname("KLEIN_TOLERANCE");
    app.add_option("--grid-h", cfg.grid_h, "log-polar grid step for numeric moduli")->envname("KLEIN_GRID_H");
    app.add_option("--boundary-samples", cfg.boundary_samples, "points per boundary curve")
        ->envname("KLEIN_BOUNDARY_SAMPLES");
    app.add_option("--max-word-len", cfg.max_word_len, "longest reduced word")->envname("KLEIN_MAX_WORD_LEN");
    app.add_option("--refine-max", cfg.refine_max, "refinement budget")->envname("KLEIN_REFINE_MAX");
    app.add_option("--seed", cfg.seed, "random seed")->envname("KLEIN_SEED");
    app.add_option("--out", out_dir, "output directory")->envname("KLEIN_OUT");
    app.add_flag("--svg", cfg.svg, "also write an SVG figure")->envname("KLEIN_SVG");

    std::string schottky_file;
    auto* schottky = app.add_subcommand("schottky", "verify a Schottky configuration and sample its limit set");
    schottky->add_option("config", schottky_file, "configuration JSON file")->required();

    std::string annulus_arg;
    auto* annulus = app.add_subcommand("annulus", "moduli, separating circle and lemma checks for an annulus");
    annulus->add_option("descriptor", annulus_arg, "descriptor JSON file or inline JSON")->required();

    std::string dessin_file;
    int refine = 0;
    bool find_loops = false;
    auto* dessin = app.add_subcommand("dessin", "dessin of a monodromy triple, refinement and loop search");
    dessin->add_option("triple", dessin_file, "monodromy triple JSON file")->required();
    dessin->add_option("--refine", refine, "refinement stages")->check(CLI::NonNegativeNumber);
    dessin->add_flag("--find-loops", find_loops, "search for disjoint covering loops");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run property suites");
    verify->add_option("--suite", suite, "moebius, schottky, lemmas, belyi or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    cfg.out_dir = out_dir;

    try {
        Outcome outcome{klein::VerificationReport("")};
        std::string stem;
        if (schottky->parsed()) {
            outcome = run_schottky(read_json_file(schottky_file), cfg);
            stem = "schottky";
        } else if (annulus->parsed()) {
            outcome = run_annulus(descriptor_argument(annulus_arg), cfg);
            stem = "annulus";
        } else if (dessin->parsed()) {
            outcome = run_dessin(read_json_file(dessin_file), refine, find_loops, cfg);
            stem = "dessin";
        } else {
            outcome = run_verify(suite, cfg);
            stem = "verify_" + suite;
        }
        const auto path = write_outcome(outcome, stem, cfg);
        for (const klein::Check& c : outcome.report.checks())
            if (!c.pass) std::cerr << "FAIL " << c.name << (c.note.empty() ? "" : ": " + c.note) << '\n';
        std::cout << outcome.report.suite() << ": " << (outcome.report.passed() ? "pass" : "fail") << " ("
                  << path.string() << ")\n";
        return outcome.exit_code();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "klein/annulus.hpp"
#include "klein/report.hpp"

namespace klein::cli {

/// Bad flags, unreadable or malformed input. Maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    double tolerance = 1e-9;
    double grid_h = annulus::kDefaultGridStep;
    int boundary_samples = annulus::kDefaultBoundarySamples;
    int max_word_len = 4;
    int refine_max = 3;
    std::uint64_t seed = 42;
    std::filesystem::path out_dir = ".";
    bool svg = false;

    /// Throws UsageError unless every numeric field is positive.
    void validate() const;
    annulus::AnnulusOptions annulus_options() const;
};

/// A report plus the data it was computed from and an optional figure.
struct Outcome {
    explicit Outcome(VerificationReport r) : report(std::move(r)) {}

    VerificationReport report;
    Json data = Json::object();
    std::optional<std::string> svg;

    Json to_json() const;
    int exit_code() const { return report.passed() ? 0 : 1; }
};

/// Parses a file; throws UsageError when it is missing or not valid JSON.
Json read_json_file(const std::filesystem::path& path);

/// Writes `<stem>.json` (and `<stem>.svg` when present and requested) under
/// cfg.out_dir, creating the directory. Returns the report path.
std::filesystem::path write_outcome(const Outcome& outcome, const std::string& stem, const RunConfig& cfg);

Outcome run_schottky(const Json& config, const RunConfig& cfg);
Outcome run_annulus(const Json& descriptor, const RunConfig& cfg);
/// refine < 0 means none; refinement stops at cfg.refine_max stages.
Outcome run_dessin(const Json& triple, int refine, bool find_loops, const RunConfig& cfg);

/// Suites: moebius, schottky, lemmas, belyi, all. Throws UsageError for any
/// other name.
Outcome run_verify(const std::string& suite, const RunConfig& cfg);

}  // namespace klein::cli

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "klein/geom/circle.hpp"
#include "klein/geom/io.hpp"
#include "klein/report.hpp"

namespace klein::schottky {

using geom::GeneralizedCircle;
using geom::MoebiusMap;
using geom::SpherePoint;

/// A generator A with A(c) = c_prime, sending the exterior of c onto the
/// interior of c_prime.
struct CirclePairing {
    GeneralizedCircle c;
    GeneralizedCircle c_prime;
    MoebiusMap map;
    std::optional<double> theta;  // set when built from the twist family
};

/// z -> q + rho rho' e^{i theta} / (z - p). No disjointness check.
MoebiusMap twist_pairing_map(Complex p, double rho, Complex q, double rho_prime, double theta);

/// Pairing of |z - p| = rho with |z - q| = rho' through the twist family.
/// Throws std::invalid_argument for nonpositive radii or circles that are not
/// externally disjoint.
CirclePairing pairing_from_circles(Complex p, double rho, Complex q, double rho_prime, double theta,
                                   double tol = 1e-9);

/// Same circle data without the disjointness precondition; used when loading
/// configurations that are verified afterwards.
CirclePairing pairing_from_circles_unchecked(Complex p, double rho, Complex q, double rho_prime, double theta);

/// General pairing from an arbitrary map; throws std::invalid_argument unless
/// map(c) = c_prime and the exterior of c goes to the interior of c_prime.
CirclePairing make_pairing(const GeneralizedCircle& c, const GeneralizedCircle& c_prime, const MoebiusMap& map,
                           double tol = 1e-9);

/// Max distance from c_prime of the images of `samples` points of c.
double pairing_circle_error(const CirclePairing& pairing, int samples = 64);
/// Whether a point of the exterior of c lands in the interior of c_prime.
bool pairing_orientation_ok(const CirclePairing& pairing, double tol = 1e-9);

class SchottkyConfiguration {
public:
    /// Throws std::invalid_argument when fewer than two pairings are given.
    explicit SchottkyConfiguration(std::vector<CirclePairing> pairings);

    int genus() const { return static_cast<int>(pairings_.size()); }
    const std::vector<CirclePairing>& pairings() const { return pairings_; }
    /// C_1, C_1', C_2, C_2', ...
    std::vector<GeneralizedCircle> circles() const;

private:
    std::vector<CirclePairing> pairings_;
};

/// Letters are signed generator numbers: +j is A_j, -j is A_j^{-1} (j >= 1).
using ReducedWord = std::vector<int>;

std::string word_to_string(const ReducedWord& w);

MoebiusMap letter_map(const SchottkyConfiguration& cfg, int letter);
/// Circle bounding the disk that `letter` maps the exterior region into.
const GeneralizedCircle& letter_disk(const SchottkyConfiguration& cfg, int letter);

struct WordMap {
    ReducedWord word;
    MoebiusMap map;  // letters composed left to right: w = l1 l2 ... lk acts as l1 ∘ ... ∘ lk
};

/// 1 + sum_{k=1..max_len} 2g (2g-1)^(k-1), saturating at SIZE_MAX.
std::size_t word_count(int genus, int max_len);

inline constexpr std::size_t kDefaultWordCap = 1'000'000;

/// Reduced words of length <= max_len, length-major, generators before
/// inverses, lexicographic by index. Throws std::length_error above `cap`.
std::vector<WordMap> enumerate_words(const SchottkyConfiguration& cfg, int max_len,
                                     std::size_t cap = kDefaultWordCap);

/// Conditions (i) disjoint circles, (ii) maps carry circles, (iii) orientation,
/// plus the derived A_j(D) ∩ D = ∅.
VerificationReport verify_classical(const SchottkyConfiguration& cfg, double tol = 1e-9);

/// Image disk of a nonempty word l1...lk: (l1 ∘ ... ∘ l_{k-1})(disk(lk)).
GeneralizedCircle image_disk(const SchottkyConfiguration& cfg, const ReducedWord& w);

struct LimitPoint {
    ReducedWord word;
    SpherePoint point;
    GeneralizedCircle disk;
    double radius;
};

using LimitSample = std::vector<LimitPoint>;

/// For every reduced word of length exactly max_len, the image under the word
/// of the center of the disk of its last letter. Throws std::invalid_argument
/// for configurations failing verify_classical.
LimitSample limit_points(const SchottkyConfiguration& cfg, int max_len, double tol = 1e-9,
                         std::size_t cap = kDefaultWordCap);

/// True iff z is strictly outside all 2g closed disks (margin tol).
bool in_fundamental_domain(const SchottkyConfiguration& cfg, const SpherePoint& z, double tol = 1e-9);

/// Pairs circle 2j with 2j+1 (theta = 0) for real centers. Throws
/// std::invalid_argument for non-real centers, size mismatch or overlap.
SchottkyConfiguration koebe_symmetric_config(int genus, std::span<const Complex> centers,
                                             std::span<const double> radii, double tol = 1e-9);

/// Circle set closed under conjugation and pairing maps real up to a common phase.
bool is_conjugation_symmetric(const SchottkyConfiguration& cfg, double tol = 1e-9);

/// Euler characteristic of closure(D) with paired circles identified, from a
/// cell structure (one marked point per circle, circle edges, a cut tree).
int quotient_euler_characteristic(const SchottkyConfiguration& cfg, double tol = 1e-9);

/// {"genus": g, "pairings": [{"c": circle, "c_prime": circle, "theta": t}, ...]}
SchottkyConfiguration config_from_json(const geom::Json& j);
geom::Json to_json(const SchottkyConfiguration& cfg);
geom::Json to_json(const LimitSample& sample);

/// One path per circle, then one marker per limit point, in input order.
std::string render_svg(const SchottkyConfiguration& cfg, const LimitSample& sample);

}  // namespace klein::schottky

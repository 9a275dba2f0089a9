#include "klein/schottky.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "klein/svg.hpp"

namespace klein::schottky {

using geom::CircleRelation;
using geom::OrientedCircle;
using geom::Side;

MoebiusMap twist_pairing_map(Complex p, double rho, Complex q, double rho_prime, double theta) {
    if (!(rho > 0.0) || !(rho_prime > 0.0)) throw std::invalid_argument("pairing: radii must be positive");
    const Complex k = std::polar(rho * rho_prime, theta);
    return {q, k - q * p, 1.0, -p};
}

CirclePairing pairing_from_circles_unchecked(Complex p, double rho, Complex q, double rho_prime, double theta) {
    MoebiusMap map = twist_pairing_map(p, rho, q, rho_prime, theta);
    return {GeneralizedCircle::circle(p, rho), GeneralizedCircle::circle(q, rho_prime), map, theta};
}

CirclePairing pairing_from_circles(Complex p, double rho, Complex q, double rho_prime, double theta, double tol) {
    CirclePairing pairing = pairing_from_circles_unchecked(p, rho, q, rho_prime, theta);
    const CircleRelation rel = geom::relation(pairing.c, pairing.c_prime, tol);
    if (rel != CircleRelation::disjoint_external)
        throw std::invalid_argument("pairing: circles are " + std::string(geom::to_string(rel)) +
                                    ", expected disjoint_external");
    return pairing;
}

double pairing_circle_error(const CirclePairing& pairing, int samples) {
    double worst = 0.0;
    for (Complex z : pairing.c.sample(samples)) {
        const SpherePoint w = pairing.map(SpherePoint(z));
        if (w.is_infinite()) {
            if (!pairing.c_prime.is_line()) return std::numeric_limits<double>::infinity();
            continue;
        }
        double err = pairing.c_prime.distance(w.value());
        if (!pairing.c_prime.is_line()) err /= std::max(1.0, pairing.c_prime.radius());
        worst = std::max(worst, err);
    }
    return worst;
}

namespace {

// A point strictly on the exterior side of c.
SpherePoint exterior_witness(const GeneralizedCircle& c) {
    if (!c.is_line()) return SpherePoint::infinity();
    const Complex q = c.q();
    return SpherePoint(q * (1.0 - 0.5 * c.s()) / std::norm(q));
}

}  // namespace

bool pairing_orientation_ok(const CirclePairing& pairing, double tol) {
    const SpherePoint image = pairing.map(exterior_witness(pairing.c));
    return OrientedCircle{pairing.c_prime, Side::interior}.contains(image, tol);
}

CirclePairing make_pairing(const GeneralizedCircle& c, const GeneralizedCircle& c_prime, const MoebiusMap& map,
                           double tol) {
    CirclePairing pairing{c, c_prime, map, std::nullopt};
    if (pairing_circle_error(pairing) > tol) throw std::invalid_argument("pairing: map(c) != c_prime");
    if (!pairing_orientation_ok(pairing, tol))
        throw std::invalid_argument("pairing: exterior of c is not sent into the interior of c_prime");
    return pairing;
}

SchottkyConfiguration::SchottkyConfiguration(std::vector<CirclePairing> pairings) : pairings_(std::move(pairings)) {
    if (pairings_.size() < 2) throw std::invalid_argument("Schottky configuration: rank below 2");
}

std::vector<GeneralizedCircle> SchottkyConfiguration::circles() const {
    std::vector<GeneralizedCircle> out;
    out.reserve(2 * pairings_.size());
    for (const auto& p : pairings_) {
        out.push_back(p.c);
        out.push_back(p.c_prime);
    }
    return out;
}

std::string word_to_string(const ReducedWord& w) {
    if (w.empty()) return "e";
    std::string out;
    for (int letter : w) {
        if (!out.empty()) out += ' ';
        out += (letter > 0 ? "a" : "A") + std::to_string(std::abs(letter));
    }
    return out;
}

namespace {

std::size_t letter_index(const SchottkyConfiguration& cfg, int letter) {
    const int j = std::abs(letter);
    if (letter == 0 || j > cfg.genus()) throw std::out_of_range("letter out of range");
    return static_cast<std::size_t>(j - 1);
}

// Alphabet order: a1..ag, then A1..Ag.
std::vector<int> alphabet(int g) {
    std::vector<int> letters;
    for (int j = 1; j <= g; ++j) letters.push_back(j);
    for (int j = 1; j <= g; ++j) letters.push_back(-j);
    return letters;
}

}  // namespace

MoebiusMap letter_map(const SchottkyConfiguration& cfg, int letter) {
    const MoebiusMap& m = cfg.pairings()[letter_index(cfg, letter)].map;
    return letter > 0 ? m : m.inverse();
}

const GeneralizedCircle& letter_disk(const SchottkyConfiguration& cfg, int letter) {
    const CirclePairing& p = cfg.pairings()[letter_index(cfg, letter)];
    return letter > 0 ? p.c_prime : p.c;
}

std::size_t word_count(int genus, int max_len) {
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    const std::size_t first = 2 * static_cast<std::size_t>(genus);
    const std::size_t branch = first - 1;
    std::size_t total = 1, level = first;
    for (int k = 1; k <= max_len; ++k) {
        if (total > kMax - level) return kMax;
        total += level;
        if (k < max_len) {
            if (level > kMax / branch) return kMax;
            level *= branch;
        }
    }
    return total;
}

std::vector<WordMap> enumerate_words(const SchottkyConfiguration& cfg, int max_len, std::size_t cap) {
    if (max_len < 0) throw std::invalid_argument("enumerate_words: negative length");
    const std::size_t total = word_count(cfg.genus(), max_len);
    if (total > cap)
        throw std::length_error("enumerate_words: " + std::to_string(total) + " words exceed cap " +
                                std::to_string(cap));

    const std::vector<int> letters = alphabet(cfg.genus());
    std::vector<MoebiusMap> generators;
    for (int l : letters) generators.push_back(letter_map(cfg, l));

    std::vector<WordMap> out;
    out.reserve(total);
    out.push_back({{}, MoebiusMap::identity()});
    std::size_t level_begin = 0, level_end = 1;
    for (int k = 1; k <= max_len; ++k) {
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (std::size_t a = 0; a < letters.size(); ++a) {
                const ReducedWord& prefix = out[i].word;
                if (!prefix.empty() && prefix.back() == -letters[a]) continue;
                ReducedWord w = prefix;
                w.push_back(letters[a]);
                MoebiusMap m = compose(out[i].map, generators[a]);
                out.push_back({std::move(w), m});
            }
        }
        level_begin = level_end;
        level_end = out.size();
    }
    return out;
}

VerificationReport verify_classical(const SchottkyConfiguration& cfg, double tol) {
    VerificationReport report("verify_classical");
    const int g = cfg.genus();
    report.add("rank", g >= 2, {{"genus", g}}, 2, "rank at least 2");

    const std::vector<GeneralizedCircle> circles = cfg.circles();
    bool disjoint = true;
    double min_delta = std::numeric_limits<double>::infinity();
    Json offending = Json::array();
    for (std::size_t i = 0; i < circles.size(); ++i) {
        for (std::size_t j = i + 1; j < circles.size(); ++j) {
            const double delta = geom::inversive_distance(circles[i], circles[j]);
            min_delta = std::min(min_delta, delta);
            const CircleRelation rel = geom::relation(circles[i], circles[j], tol);
            if (rel != CircleRelation::disjoint_external) {
                disjoint = false;
                offending.push_back({{"circles", {i, j}}, {"relation", geom::to_string(rel)}});
            }
        }
    }
    report.add("circles_disjoint", disjoint, {{"min_inversive_distance", min_delta}, {"offending", offending}}, tol,
               "condition (i): the 2g circles are pairwise disjoint_external");

    bool maps_ok = true, orient_ok = true;
    Json errors = Json::array(), orientation = Json::array();
    for (const CirclePairing& p : cfg.pairings()) {
        const double err = pairing_circle_error(p);
        errors.push_back(err);
        maps_ok = maps_ok && err <= tol;
        const bool ok = pairing_orientation_ok(p, tol);
        orientation.push_back(ok);
        orient_ok = orient_ok && ok;
    }
    report.add("pairing_maps_circles", maps_ok, {{"max_sample_error", errors}}, tol,
               "condition (ii): A_j(C_j) = C_j'");
    report.add("pairing_orientation", orient_ok, {{"per_pairing", orientation}}, nullptr,
               "condition (iii): A_j maps the exterior of C_j into the interior of C_j'");
    report.add("images_of_D_disjoint", disjoint && orient_ok, Json::object(), nullptr,
               "derived from (i) and (iii): A_j(D) does not meet D");
    return report;
}

GeneralizedCircle image_disk(const SchottkyConfiguration& cfg, const ReducedWord& w) {
    if (w.empty()) throw std::invalid_argument("image_disk: empty word");
    MoebiusMap prefix = MoebiusMap::identity();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) prefix = compose(prefix, letter_map(cfg, w[i]));
    const OrientedCircle image = geom::apply(prefix, OrientedCircle{letter_disk(cfg, w.back()), Side::interior});
    if (image.circle.is_line() || image.side != Side::interior)
        throw std::logic_error("image_disk: image is not a bounded disk");
    return image.circle;
}

LimitSample limit_points(const SchottkyConfiguration& cfg, int max_len, double tol, std::size_t cap) {
    if (!verify_classical(cfg, tol).passed())
        throw std::invalid_argument("limit_points: configuration fails verify_classical");
    LimitSample sample;
    if (max_len <= 0) return sample;
    const std::vector<WordMap> words = enumerate_words(cfg, max_len, cap);
    for (const WordMap& wm : words) {
        if (static_cast<int>(wm.word.size()) != max_len) continue;
        const Complex seed = letter_disk(cfg, wm.word.back()).center();
        const GeneralizedCircle disk = image_disk(cfg, wm.word);
        sample.push_back({wm.word, wm.map(SpherePoint(seed)), disk, disk.radius()});
    }
    return sample;
}

bool in_fundamental_domain(const SchottkyConfiguration& cfg, const SpherePoint& z, double tol) {
    for (const GeneralizedCircle& c : cfg.circles())
        if (!OrientedCircle{c, Side::exterior}.contains(z, tol)) return false;
    return true;
}

SchottkyConfiguration koebe_symmetric_config(int genus, std::span<const Complex> centers,
                                             std::span<const double> radii, double tol) {
    if (genus < 2) throw std::invalid_argument("koebe_symmetric_config: rank below 2");
    const std::size_t n = 2 * static_cast<std::size_t>(genus);
    if (centers.size() != n || radii.size() != n)
        throw std::invalid_argument("koebe_symmetric_config: need 2g centers and radii");
    for (Complex c : centers)
        if (c.imag() != 0.0) throw std::invalid_argument("koebe_symmetric_config: centers must be real");
    std::vector<CirclePairing> pairings;
    for (int j = 0; j < genus; ++j)
        pairings.push_back(pairing_from_circles(centers[2 * j], radii[2 * j], centers[2 * j + 1],
                                                radii[2 * j + 1], 0.0, tol));
    SchottkyConfiguration cfg(std::move(pairings));
    if (!verify_classical(cfg, tol).passed())
        throw std::invalid_argument("koebe_symmetric_config: circles overlap");
    return cfg;
}

namespace {

bool real_up_to_phase(const MoebiusMap& m, double tol) {
    const Complex coeffs[] = {m.a(), m.b(), m.c(), m.d()};
    Complex big = 0.0;
    for (Complex z : coeffs)
        if (std::abs(z) > std::abs(big)) big = z;
    const Complex phase = std::abs(big) / big;
    for (Complex z : coeffs)
        if (std::abs((phase * z).imag()) > tol) return false;
    return true;
}

}  // namespace

bool is_conjugation_symmetric(const SchottkyConfiguration& cfg, double tol) {
    const auto circles = cfg.circles();
    for (const GeneralizedCircle& c : circles) {
        const GeneralizedCircle mirrored(c.p(), std::conj(c.q()), c.s());
        const bool found = std::any_of(circles.begin(), circles.end(),
                                       [&](const GeneralizedCircle& other) { return approx_equal(mirrored, other, tol); });
        if (!found) return false;
    }
    return std::all_of(cfg.pairings().begin(), cfg.pairings().end(),
                       [&](const CirclePairing& p) { return real_up_to_phase(p.map, tol); });
}

int quotient_euler_characteristic(const SchottkyConfiguration& cfg, double tol) {
    const int g = cfg.genus();
    const int n = 2 * g;
    // Cells of closure(D): a marked vertex and a loop edge on each boundary
    // circle, plus a tree of n - 1 cut arcs; cutting D along the tree leaves
    // one open disk.
    std::vector<int> vertex_parent(n), edge_parent(n);
    std::iota(vertex_parent.begin(), vertex_parent.end(), 0);
    std::iota(edge_parent.begin(), edge_parent.end(), 0);
    auto find = [](std::vector<int>& parent, int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (int j = 0; j < g; ++j) {
        const CirclePairing& p = cfg.pairings()[j];
        // The marked point of C_j' is the image of the marked point of C_j.
        const Complex marked = p.c.sample(1).front();
        const SpherePoint image = p.map(SpherePoint(marked));
        if (image.is_infinite() || p.c_prime.distance(image.value()) > tol * std::max(1.0, p.c_prime.radius()))
            throw std::invalid_argument("quotient_euler_characteristic: pairing does not carry C_j to C_j'");
        vertex_parent[find(vertex_parent, 2 * j + 1)] = find(vertex_parent, 2 * j);
        edge_parent[find(edge_parent, 2 * j + 1)] = find(edge_parent, 2 * j);
    }

    int vertices = 0, circle_edges = 0;
    for (int i = 0; i < n; ++i) {
        if (find(vertex_parent, i) == i) ++vertices;
        if (find(edge_parent, i) == i) ++circle_edges;
    }
    const int cut_edges = n - 1;
    const int faces = 1;
    return vertices - (circle_edges + cut_edges) + faces;
}

SchottkyConfiguration config_from_json(const geom::Json& j) {
    if (!j.is_object()) throw std::invalid_argument("configuration must be a JSON object");
    const int genus = j.at("genus").get<int>();
    const geom::Json& list = j.at("pairings");
    if (!list.is_array()) throw std::invalid_argument("pairings must be an array");
    if (static_cast<int>(list.size()) != genus)
        throw std::invalid_argument("genus does not match the number of pairings");
    std::vector<CirclePairing> pairings;
    for (const geom::Json& entry : list) {
        const GeneralizedCircle c = geom::circle_from_json(entry.at("c"));
        const GeneralizedCircle cp = geom::circle_from_json(entry.at("c_prime"));
        if (c.is_line() || cp.is_line()) throw std::invalid_argument("pairing circles must be proper circles");
        const double theta = entry.value("theta", 0.0);
        pairings.push_back(pairing_from_circles_unchecked(c.center(), c.radius(), cp.center(), cp.radius(), theta));
    }
    return SchottkyConfiguration(std::move(pairings));
}

geom::Json to_json(const SchottkyConfiguration& cfg) {
    geom::Json j;
    j["genus"] = cfg.genus();
    geom::Json list = geom::Json::array();
    for (const CirclePairing& p : cfg.pairings()) {
        geom::Json entry;
        entry["c"] = geom::to_json(p.c);
        entry["c_prime"] = geom::to_json(p.c_prime);
        if (p.theta) entry["theta"] = *p.theta;
        entry["map"] = geom::to_json(p.map);
        list.push_back(std::move(entry));
    }
    j["pairings"] = std::move(list);
    return j;
}

geom::Json to_json(const LimitSample& sample) {
    geom::Json list = geom::Json::array();
    for (const LimitPoint& lp : sample) {
        geom::Json entry;
        entry["word"] = lp.word;
        entry["point"] = geom::to_json(lp.point);
        entry["disk"] = geom::to_json(lp.disk);
        entry["radius"] = lp.radius;
        list.push_back(std::move(entry));
    }
    return list;
}

std::string render_svg(const SchottkyConfiguration& cfg, const LimitSample& sample) {
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    for (const GeneralizedCircle& c : cfg.circles()) {
        if (c.is_line()) continue;
        min_x = std::min(min_x, c.center().real() - c.radius());
        max_x = std::max(max_x, c.center().real() + c.radius());
        min_y = std::min(min_y, c.center().imag() - c.radius());
        max_y = std::max(max_y, c.center().imag() + c.radius());
    }
    const double margin = 0.05 * std::max(max_x - min_x, max_y - min_y);
    svg::Document doc(min_x - margin, min_y - margin, max_x + margin, max_y + margin);
    const double stroke = 0.004 * (max_x - min_x + 2 * margin);
    for (const GeneralizedCircle& c : cfg.circles()) {
        if (c.is_line()) continue;
        doc.circle_path(c.center(), c.radius(), "#1f4e8c", stroke, "schottky-circle");
    }
    for (const LimitPoint& lp : sample) {
        if (lp.point.is_infinite()) continue;
        doc.marker(lp.point.value(), 1.5 * stroke, "#b22222", "limit-point");
    }
    return doc.str();
}

}  // namespace klein::schottky

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "homology.hpp"
#include "klein/belyi.hpp"
#include "klein/svg.hpp"

namespace klein::belyi {

namespace {

constexpr const char* kColorNames[3] = {"1", "w", "w2"};

}  // namespace

Dessin build_dessin(const MonodromyTriple& t) {
    const TripleDiagnostics diag = validate_triple(t);
    if (!diag.ok) throw std::invalid_argument("cannot build a dessin from an invalid triple: " + diag.problems.front());
    const int d = t.degree();
    auto dart = [d](int arc, int sheet, int end) { return 2 * (arc * d + sheet) + end; };

    Dessin out{.triple = t};
    out.genus = genus(t);
    out.rotation.assign(static_cast<std::size_t>(6 * d), -1);
    for (int i = 0; i < d; ++i) {
        out.rotation[dart(0, i, 0)] = dart(2, i, 1);
        out.rotation[dart(2, i, 1)] = dart(0, t.s1(i), 0);
        out.rotation[dart(1, i, 0)] = dart(0, i, 1);
        out.rotation[dart(0, i, 1)] = dart(1, t.sw(i), 0);
        out.rotation[dart(2, i, 0)] = dart(1, i, 1);
        out.rotation[dart(1, i, 1)] = dart(2, t.sw2(i), 0);
    }

    // vertices: cycles of s1, then sw, then sw2, each found from its start darts
    out.vertex_of.assign(out.rotation.size(), -1);
    for (int color = 0; color < 3; ++color) {
        for (int i = 0; i < d; ++i) {
            const int first = dart(color, i, 0);
            if (out.vertex_of[first] >= 0) continue;
            for (int x = first; out.vertex_of[x] < 0; x = out.rotation[x]) out.vertex_of[x] = out.num_vertices;
            out.vertex_color.push_back(color);
            ++out.num_vertices;
        }
    }

    out.face_of.assign(out.rotation.size(), -1);
    for (int first = 0; first < 6 * d; ++first) {
        if (out.face_of[first] >= 0) continue;
        for (int x = first; out.face_of[x] < 0; x = out.rotation[Dessin::involution(x)]) out.face_of[x] = out.num_faces;
        ++out.num_faces;
    }
    return out;
}

bool is_simple_cycle(const Dessin& d, const Cycle& c) {
    if (c.size() < 2) return false;
    std::vector<bool> seen_vertex(static_cast<std::size_t>(d.num_vertices), false);
    std::vector<bool> seen_edge(static_cast<std::size_t>(d.num_edges()), false);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const int x = c[k];
        if (x < 0 || x >= d.num_darts()) return false;
        const int next = c[(k + 1) % c.size()];
        if (next < 0 || next >= d.num_darts()) return false;
        if (d.vertex_of[Dessin::involution(x)] != d.vertex_of[next]) return false;
        const int v = d.vertex_of[x];
        if (seen_vertex[v] || seen_edge[Dessin::edge_of(x)]) return false;
        seen_vertex[v] = true;
        seen_edge[Dessin::edge_of(x)] = true;
    }
    return true;
}

std::vector<Cycle> face_cycles(const Dessin& d) {
    std::vector<Cycle> faces(static_cast<std::size_t>(d.num_faces));
    std::vector<bool> done(static_cast<std::size_t>(d.num_darts()), false);
    for (int first = 0; first < d.num_darts(); ++first) {
        if (done[first]) continue;
        Cycle& f = faces[d.face_of[first]];
        for (int x = first; !done[x]; x = d.rotation[Dessin::involution(x)]) {
            done[x] = true;
            f.push_back(x);
        }
    }
    return faces;
}

std::vector<std::uint8_t> homology_class(const Dessin& d, const Cycle& c) {
    const detail::HomologyBasis basis(d);
    const detail::Bits bits = basis.coordinates(c);
    std::vector<std::uint8_t> out;
    for (int k = 0; k < basis.rank(); ++k) out.push_back(detail::test_bit(bits, k) ? 1 : 0);
    return out;
}

int homology_rank(const Dessin& d, const std::vector<Cycle>& cycles) {
    const detail::HomologyBasis basis(d);
    detail::Eliminator elim;
    for (const Cycle& c : cycles) elim.insert(basis.coordinates(c));
    return elim.rank();
}

std::vector<Cycle> tree_cotree_basis(const Dessin& d) { return detail::HomologyBasis(d).fundamental_cycles(); }

std::optional<int> loop_is_covering(const Dessin& d, const Cycle& c) {
    if (!is_simple_cycle(d, c)) return std::nullopt;
    int direction = 0;
    for (int x : c) {
        const int step = ((d.dart_color(Dessin::involution(x)) - d.dart_color(x)) % 3 + 3) % 3;
        if (step == 0) return std::nullopt;
        if (direction == 0) direction = step;
        if (step != direction) return std::nullopt;
    }
    return static_cast<int>(c.size()) / 3;
}

VerificationReport verify_loop_set(const Dessin& d, const LoopSet& loops) {
    VerificationReport report("loops");
    bool simple = true, covering = true;
    Json degrees = Json::array();
    for (std::size_t k = 0; k < loops.cycles.size(); ++k) {
        simple = simple && is_simple_cycle(d, loops.cycles[k]);
        const auto deg = loop_is_covering(d, loops.cycles[k]);
        const bool matches = deg.has_value() && k < loops.degrees.size() && *deg == loops.degrees[k];
        covering = covering && matches;
        degrees.push_back(deg ? Json(*deg) : Json(nullptr));
    }
    report.add("simple", simple, {{"count", loops.cycles.size()}});
    report.add("covering", covering, {{"degrees", degrees}});

    bool disjoint = true;
    std::vector<int> owner(static_cast<std::size_t>(d.num_vertices), -1);
    for (std::size_t k = 0; k < loops.cycles.size(); ++k) {
        for (int x : loops.cycles[k]) {
            if (x < 0 || x >= d.num_darts()) continue;
            int& o = owner[d.vertex_of[x]];
            if (o >= 0 && o != static_cast<int>(k)) disjoint = false;
            o = static_cast<int>(k);
        }
    }
    report.add("disjoint", disjoint);

    int rank = -1;
    if (simple) rank = homology_rank(d, loops.cycles);
    report.add("independent", rank == static_cast<int>(loops.cycles.size()),
               {{"rank", rank}, {"count", loops.cycles.size()}});
    report.add("count_equals_genus", static_cast<int>(loops.cycles.size()) == d.genus,
               {{"count", loops.cycles.size()}, {"genus", d.genus}});
    return report;
}

Json to_json(const Dessin& d) {
    Json vertices = Json::array();
    std::vector<Json> vertex_darts(static_cast<std::size_t>(d.num_vertices), Json::array());
    for (int v = 0; v < d.num_vertices; ++v) {
        int first = -1;
        for (int x = 0; x < d.num_darts() && first < 0; ++x)
            if (d.vertex_of[x] == v) first = x;
        Json darts = Json::array();
        int x = first;
        do {
            darts.push_back(x);
            x = d.rotation[x];
        } while (x != first);
        vertices.push_back(Json{{"id", v}, {"color", kColorNames[d.vertex_color[v]]}, {"rotation", darts}});
    }
    Json edges = Json::array();
    for (int e = 0; e < d.num_edges(); ++e)
        edges.push_back(Json{{"id", e},
                             {"arc", e / d.degree()},
                             {"sheet", e % d.degree()},
                             {"from", d.vertex_of[2 * e]},
                             {"to", d.vertex_of[2 * e + 1]}});
    Json faces = Json::array();
    for (const Cycle& f : face_cycles(d)) faces.push_back(f);
    return Json{{"degree", d.degree()},
                {"genus", d.genus},
                {"counts", {{"V", d.num_vertices}, {"E", d.num_edges()}, {"F", d.num_faces}}},
                {"euler_characteristic", d.euler_characteristic()},
                {"monodromy", to_json(d.triple)},
                {"vertices", vertices},
                {"edges", edges},
                {"faces", faces}};
}

Json to_json(const Dessin& d, const LoopSet& loops) {
    Json j = to_json(d);
    Json arr = Json::array();
    for (std::size_t k = 0; k < loops.cycles.size(); ++k) {
        Json vertices = Json::array();
        for (int x : loops.cycles[k]) vertices.push_back(d.vertex_of[x]);
        arr.push_back(Json{{"darts", loops.cycles[k]},
                           {"vertices", vertices},
                           {"degree", k < loops.degrees.size() ? loops.degrees[k] : 0}});
    }
    j["loops"] = arr;
    return j;
}

std::string render_svg(const Dessin& d, const LoopSet* loops) {
    constexpr double kPi = std::numbers::pi;
    constexpr const char* kFill[3] = {"#d62728", "#2ca02c", "#1f77b4"};
    constexpr const char* kLoopStroke[4] = {"#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};
    // vertices of each color on their own ring, spread evenly
    std::vector<Complex> pos(static_cast<std::size_t>(d.num_vertices));
    int count[3] = {0, 0, 0}, seen[3] = {0, 0, 0};
    for (int c : d.vertex_color) ++count[c];
    for (int v = 0; v < d.num_vertices; ++v) {
        const int c = d.vertex_color[v];
        pos[v] = std::polar(1.0 + 0.25 * c, 2.0 * kPi * (seen[c]++ + c / 3.0) / count[c]);
    }
    svg::Document doc(-1.8, -1.8, 1.8, 1.8);
    for (int e = 0; e < d.num_edges(); ++e)
        doc.line(pos[d.vertex_of[2 * e]], pos[d.vertex_of[2 * e + 1]], "#999999", 0.006, "dessin-edge");
    if (loops) {
        for (std::size_t k = 0; k < loops->cycles.size(); ++k)
            for (int x : loops->cycles[k])
                doc.line(pos[d.vertex_of[x]], pos[d.vertex_of[Dessin::involution(x)]], kLoopStroke[k % 4], 0.02,
                         "dessin-loop");
    }
    for (int v = 0; v < d.num_vertices; ++v) doc.marker(pos[v], 0.035, kFill[d.vertex_color[v]], "dessin-vertex");
    return doc.str();
}

}  // namespace klein::belyi

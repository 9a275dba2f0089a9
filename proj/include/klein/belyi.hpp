#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "klein/geom/io.hpp"
#include "klein/report.hpp"

namespace klein::belyi {

using geom::Json;

/// Bijection of {0, ..., d-1} given by its image array.
class Permutation {
public:
    /// Throws std::invalid_argument unless `images` is a bijection.
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int degree);
    /// i -> i + shift (mod degree).
    static Permutation rotation(int degree, int shift);

    int degree() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const;
    bool is_identity() const;
    std::vector<std::vector<int>> cycles() const;
    /// Cycle lengths, descending.
    std::vector<int> cycle_type() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

/// Left to right: (p * q)(i) = q(p(i)), so p acts first.
Permutation operator*(const Permutation& p, const Permutation& q);

/// Monodromy of a map branched over {1, w, w^2} (w = e^{2 pi i/3}) around
/// small loops at those values, taken in counterclockwise order from a base
/// point on the unit circle between w^2 and 1.
struct MonodromyTriple {
    Permutation s1;
    Permutation sw;
    Permutation sw2;

    /// Throws std::invalid_argument if the degrees differ.
    MonodromyTriple(Permutation a, Permutation b, Permutation c);
    static MonodromyTriple trivial() { return {Permutation::identity(1), Permutation::identity(1), Permutation::identity(1)}; }

    int degree() const { return s1.degree(); }
    const Permutation& operator[](int k) const { return k == 0 ? s1 : (k == 1 ? sw : sw2); }
    bool operator==(const MonodromyTriple&) const = default;
};

struct TripleDiagnostics {
    bool ok = true;
    std::vector<std::string> problems;
};

/// Checks s1 * sw * sw2 = id and transitivity.
TripleDiagnostics validate_triple(const MonodromyTriple& t);

/// Riemann-Hurwitz; throws std::invalid_argument for invalid triples.
int genus(const MonodromyTriple& t);

/// Word letters: +(k+1) is the base loop around the k-th branch value, -(k+1) its inverse.
Permutation word_monodromy(const MonodromyTriple& t, const std::vector<int>& word);

// ---- the degree-6 map R ----------------------------------------------------

/// R(z) = (c (z^3 + z^-3) - 6) / (c (z^3 + z^-3) + 6) with c = 1 + 2w = i sqrt(3).
geom::SpherePoint r_map(const geom::SpherePoint& z);
Complex r_map(Complex z);  // finite, non-pole z only

/// All six preimages of a finite w != 1, in closed form.
std::vector<Complex> r_fiber(Complex w);

/// Max chordal distance between R(A z), R(B z) and R(z) for A z = w z,
/// B z = 1/z over `samples` random points.
double r_deck_error(int samples, std::uint64_t seed);

struct CriticalPoint {
    geom::SpherePoint point;
    int local_degree;
    geom::SpherePoint value;
};

/// From the roots of the numerator of R' (companion matrix eigenvalues) plus
/// the behavior at infinity; sorted by argument then modulus, infinity last.
std::vector<CriticalPoint> r_critical_points(double tol = 1e-8);

struct RConstellation {
    MonodromyTriple triple;
    /// R-fiber over the base point, the sheet labels.
    std::vector<Complex> fiber;
    /// words[j][k]: crossing word of the lift of base loop j from sheet k.
    std::vector<std::vector<std::vector<int>>> words;
    /// numerator and denominator of z^3 R(z) / z^3, ascending powers.
    std::vector<Complex> numerator;
    std::vector<Complex> denominator;
};

/// Computed once by path lifting and cached. Throws std::runtime_error if the
/// continuation step underflows.
const RConstellation& r_constellation();

/// Monodromy of R composed with the map of t (degree 6d); sheet (i, k) of t
/// and R has index k d + i. Throws std::invalid_argument for invalid input.
MonodromyTriple refine(const MonodromyTriple& t);

// ---- dessins ---------------------------------------------------------------

/// Preimage of the unit circle. Darts are edge ends: arc j (0: 1 -> w,
/// 1: w -> w^2, 2: w^2 -> 1) on sheet i has start dart 2(j d + i) and end
/// dart 2(j d + i) + 1.
struct Dessin {
    MonodromyTriple triple;
    int genus = 0;
    std::vector<int> rotation;      // dart -> next dart counterclockwise at its vertex
    std::vector<int> vertex_of;     // dart -> vertex
    std::vector<int> vertex_color;  // vertex -> 0 (1), 1 (w), 2 (w^2)
    std::vector<int> face_of;       // dart -> face
    int num_vertices = 0;
    int num_faces = 0;

    int degree() const { return triple.degree(); }
    int num_darts() const { return 6 * degree(); }
    int num_edges() const { return 3 * degree(); }
    static int involution(int dart) { return dart ^ 1; }
    static int edge_of(int dart) { return dart / 2; }
    static bool is_end(int dart) { return (dart & 1) != 0; }
    int arc_of(int dart) const { return edge_of(dart) / degree(); }
    int sheet_of(int dart) const { return edge_of(dart) % degree(); }
    /// Color of the vertex a dart sits at.
    int dart_color(int dart) const { return vertex_color[static_cast<std::size_t>(vertex_of[static_cast<std::size_t>(dart)])]; }
    int euler_characteristic() const { return num_vertices - num_edges() + num_faces; }
};

/// Throws std::invalid_argument for invalid triples.
Dessin build_dessin(const MonodromyTriple& t);

/// A closed walk given by the darts it leaves each vertex through: dart x
/// walks edge_of(x) from vertex_of(x) to vertex_of(x ^ 1).
using Cycle = std::vector<int>;

/// Whether the walk closes up and visits no vertex twice.
bool is_simple_cycle(const Dessin& d, const Cycle& c);

/// Coordinates in H_1(S; Z/2) from intersections with the dual loops of the
/// edges outside a spanning tree and a dual spanning cotree. Throws
/// std::invalid_argument for walks that do not close up.
std::vector<std::uint8_t> homology_class(const Dessin& d, const Cycle& c);
int homology_rank(const Dessin& d, const std::vector<Cycle>& cycles);

/// The 2g fundamental cycles of the edges outside tree and cotree.
std::vector<Cycle> tree_cotree_basis(const Dessin& d);

/// Boundary walk of each face.
std::vector<Cycle> face_cycles(const Dessin& d);

/// Covering degree length/3 if the colors along a simple cycle all advance
/// 1 -> w -> w^2 or all retreat; nullopt otherwise.
std::optional<int> loop_is_covering(const Dessin& d, const Cycle& c);

struct LoopSet {
    std::vector<Cycle> cycles;
    std::vector<int> degrees;
};

/// Disjointness, independence and covering checks on a loop set.
VerificationReport verify_loop_set(const Dessin& d, const LoopSet& loops);

struct LoopSearchOptions {
    int refine_budget = 3;
    std::size_t candidate_cap = 20000;
    std::size_t backtrack_cap = 2'000'000;
};

/// Minimal total length g disjoint independent covering loops in this
/// dessin, or nullopt if the candidate pool has none.
std::optional<LoopSet> search_loops(const Dessin& d, int g_target, const LoopSearchOptions& opt = {});

struct LoopSearchResult {
    bool found;
    int refinements;
    Dessin dessin;  // the dessin the loops live on
    LoopSet loops;
};

/// Searches, refining the triple and retrying up to refine_budget times.
/// Throws std::invalid_argument if g_target differs from the genus.
LoopSearchResult find_disjoint_loops(const Dessin& d, int g_target, const LoopSearchOptions& opt = {});

/// {"degree": d, "s1": [...], "sw": [...], "sw2": [...]}
Json to_json(const MonodromyTriple& t);
MonodromyTriple triple_from_json(const Json& j);
Json to_json(const Dessin& d);
Json to_json(const Dessin& d, const LoopSet& loops);
/// Vertices on concentric rings by color, edges as chords, loops highlighted.
std::string render_svg(const Dessin& d, const LoopSet* loops = nullptr);

}  // namespace klein::belyi

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "klein/annulus/polyline.hpp"
#include "klein/geom/circle.hpp"
#include "klein/geom/io.hpp"

namespace klein::annulus {

using geom::GeneralizedCircle;
using geom::Json;

/// sum_k c_k z^k over a finite range of integer exponents.
class LaurentMap {
public:
    /// Throws std::invalid_argument for non-finite coefficients or a constant map.
    explicit LaurentMap(std::map<int, Complex> coefficients);

    static LaurentMap identity() { return LaurentMap({{1, 1.0}}); }
    /// z + c / z.
    static LaurentMap joukowski(Complex c) { return LaurentMap({{1, 1.0}, {-1, c}}); }

    const std::map<int, Complex>& coefficients() const { return coeffs_; }
    Complex operator()(Complex z) const;
    Complex derivative(Complex z) const;

private:
    std::map<int, Complex> coeffs_;
};

/// Polynomial quotient num / den, coefficients in ascending powers.
struct RationalMap {
    std::vector<Complex> num;
    std::vector<Complex> den{1.0};

    static RationalMap power(int d);
    static RationalMap identity() { return power(1); }
    Complex operator()(Complex z) const;
};

/// {r^-1 < |z| < r}.
struct Round {
    double r;
};

struct CircleRing {
    GeneralizedCircle inner;
    GeneralizedCircle outer;
};

/// f(A_r) for a Laurent map f injective on the closed round annulus.
struct Mapped {
    Round base;
    LaurentMap f;
};

inline constexpr int kDefaultBoundarySamples = 512;

class AnnulusSpec {
public:
    using Variant = std::variant<Round, CircleRing, Mapped>;

    /// Throws std::invalid_argument unless r > 1.
    static AnnulusSpec round(double r);
    /// Throws std::invalid_argument unless both are circles and inner lies
    /// strictly inside outer.
    static AnnulusSpec ring(const GeneralizedCircle& inner, const GeneralizedCircle& outer, double tol = 1e-9);
    /// Throws std::invalid_argument unless f is injective on the closed annulus,
    /// checked on `samples` points per boundary circle: both image curves simple,
    /// disjoint, nested and traversed with the same orientation.
    static AnnulusSpec mapped(double r, LaurentMap f, int samples = kDefaultBoundarySamples);

    const Variant& kind() const { return v_; }
    bool is_round() const { return std::holds_alternative<Round>(v_); }
    bool is_ring() const { return std::holds_alternative<CircleRing>(v_); }
    bool is_mapped() const { return std::holds_alternative<Mapped>(v_); }

private:
    explicit AnnulusSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// Two disjoint nested simple closed polylines, both stored counterclockwise.
struct BoundarySampling {
    Polyline inner;
    Polyline outer;
    int density = 0;

    /// Orders the curves by nesting; throws std::invalid_argument unless both are
    /// simple, disjoint and nested.
    static BoundarySampling from_curves(Polyline a, Polyline b);

    /// Strictly between the two curves.
    bool contains(Complex z) const;
    /// A point enclosed by the inner curve, away from it.
    Complex inner_point() const;
};

BoundarySampling sample_boundaries(const AnnulusSpec& a, int samples = kDefaultBoundarySamples);

/// Curve separating the boundaries: |z| = 1, the coaxial core circle, or f(|z| = 1).
Polyline core_curve(const AnnulusSpec& a, int samples = kDefaultBoundarySamples);

/// (1/pi) log r; throws std::invalid_argument unless r > 1.
double modulus_round(double r);
/// arccosh(inversive distance) / (2 pi); throws std::invalid_argument unless
/// the circles are disjoint and nested.
double modulus_circle_ring(const CircleRing& ring);
double modulus_circle_ring(const GeneralizedCircle& inner, const GeneralizedCircle& outer);

/// Round and ring moduli; nullopt for mapped annuli.
std::optional<double> closed_form_modulus(const AnnulusSpec& a);

/// The circle of the coaxial pencil with modulus split evenly on both sides.
GeneralizedCircle ring_core_circle(const CircleRing& ring);

/// Default log-polar step, 2 pi / 256.
inline constexpr double kDefaultGridStep = 0.02454369260617026;

class GridError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 1 / E_h for the discrete harmonic u with u = 0 on the inner curve and 1 on
/// the outer one. The grid is uniform with step h in (log|z - z0|, arg(z - z0))
/// around a point z0 inside the inner curve; cells cut by a curve use the
/// fractional distance to the crossing. Throws GridError when a grid edge
/// joins the two boundary regions directly (h too coarse) or no interior
/// node exists, std::invalid_argument for h <= 0.
double modulus_numeric(const BoundarySampling& boundaries, double h = kDefaultGridStep);

struct AnnulusOptions {
    double tolerance = 1e-9;
    double numeric_tolerance = 0.01;  // relative, for numeric moduli
    double grid_h = kDefaultGridStep;
    int boundary_samples = kDefaultBoundarySamples;
};

/// Closed form where available, otherwise modulus_numeric on a sampling.
double modulus(const AnnulusSpec& a, const AnnulusOptions& opt = {});

struct GrotzschResult {
    bool holds;
    double mod_outer;
    double mod_inner;
    bool numeric;  // mod_outer came from modulus_numeric
};

/// Requires both circles of `inner` to separate the boundary components of
/// `outer` (with tolerance); throws std::invalid_argument otherwise.
GrotzschResult grotzsch_check(const AnnulusSpec& outer, const CircleRing& inner, const AnnulusOptions& opt = {});

struct CoverRelation {
    double mod_domain;
    double mod_target;
    double ratio;  // mod_domain / mod_target
    bool target_is_d_times_domain;
    bool domain_is_d_times_target;
};

/// z -> z^d from A_rho onto A_{rho^d}. Throws std::invalid_argument unless
/// rho > 1 and d >= 1.
CoverRelation cover_modulus_relation(double rho, int d);

/// Signed clearance of `c` inside the annulus: the smaller of the gap between
/// c and the inner vertices and between c and the outer segments. Negative
/// (or -inf) if c does not separate.
double separation_clearance(const BoundarySampling& b, const GeneralizedCircle& c);

/// Best centered-circle search over a sampling: a center lattice over the
/// outer bounding box, then pattern-search refinement; the radius is chosen
/// midway between inner reach and outer gap.
std::optional<GeneralizedCircle> search_separating_circle(const BoundarySampling& b, double tol = 1e-9);

/// Deterministic; nullopt when no circle with clearance above tol is found.
std::optional<GeneralizedCircle> find_separating_circle(const AnnulusSpec& a, const AnnulusOptions& opt = {});

struct Lemma4Measurement {
    double mod_a;
    double mod_b;
    double ratio;
    int core_winding;
    bool numeric;
};

/// Checks that q maps the core curve of a into b with nonzero winding around
/// the hole of b, then measures mod(a) / mod(b). Throws std::invalid_argument
/// when the image is not essential.
Lemma4Measurement lemma4_ratio(const RationalMap& q, const AnnulusSpec& a, const AnnulusSpec& b,
                               const AnnulusOptions& opt = {});

Json to_json(const LaurentMap& f);
LaurentMap laurent_from_json(const Json& j);
Json to_json(const RationalMap& q);
RationalMap rational_from_json(const Json& j);
/// {"round": {"r": r}}, {"ring": {"inner": circle, "outer": circle}} or
/// {"mapped": {"r": r, "laurent": {"-1": [re, im], "1": [re, im]}}}.
Json to_json(const AnnulusSpec& a);
AnnulusSpec annulus_from_json(const Json& j, int samples = kDefaultBoundarySamples);

/// Boundary curves and an optional separating circle.
std::string render_svg(const BoundarySampling& b, const std::optional<GeneralizedCircle>& circle);

}  // namespace klein::annulus

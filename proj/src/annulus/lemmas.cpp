#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "klein/annulus.hpp"
#include "klein/svg.hpp"

namespace klein::annulus {

namespace {

struct Disk {
    Complex center;
    double radius;
};

Disk disk_of(const GeneralizedCircle& c) { return {c.center(), c.radius()}; }

// Score of a center: half the gap between the farthest inner vertex and the
// nearest outer segment; the best circle about c sits midway.
struct Gap {
    double inner_reach;
    double outer_gap;
    double score() const { return 0.5 * (outer_gap - inner_reach); }
};

Gap gap_at(const BoundarySampling& b, Complex c) {
    return {max_vertex_distance(c, b.inner), distance_to_polyline(c, b.outer)};
}

}  // namespace

GrotzschResult grotzsch_check(const AnnulusSpec& outer, const CircleRing& inner, const AnnulusOptions& opt) {
    const double mod_inner = modulus_circle_ring(inner);
    const Disk b_in = disk_of(inner.inner), b_out = disk_of(inner.outer);
    const double tol = opt.tolerance;

    std::optional<std::pair<Disk, Disk>> round_boundary;
    if (const auto* r = std::get_if<Round>(&outer.kind())) round_boundary = {{{0.0, 1.0 / r->r}, {0.0, r->r}}};
    if (const auto* ring = std::get_if<CircleRing>(&outer.kind()))
        round_boundary = {{disk_of(ring->inner), disk_of(ring->outer)}};

    bool essential;
    if (round_boundary) {
        const auto& [a_in, a_out] = *round_boundary;
        essential = std::abs(a_in.center - b_in.center) + a_in.radius <= b_in.radius + tol &&
                    std::abs(a_out.center - b_out.center) + b_out.radius <= a_out.radius + tol;
    } else {
        const BoundarySampling s = sample_boundaries(outer, opt.boundary_samples);
        const bool inner_ok = max_vertex_distance(b_in.center, s.inner) <= b_in.radius + tol;
        const bool outer_ok = point_in_polygon(b_out.center, s.outer) &&
                              std::ranges::all_of(s.outer, [&](Complex v) {
                                  return std::abs(v - b_out.center) >= b_out.radius - tol;
                              });
        essential = inner_ok && outer_ok;
    }
    if (!essential) throw std::invalid_argument("sub-annulus is not essential in the outer annulus");

    if (round_boundary) {
        const double mod_outer = *closed_form_modulus(outer);
        return {mod_inner <= mod_outer + tol, mod_outer, mod_inner, false};
    }
    const double mod_outer = modulus(outer, opt);
    return {mod_inner <= mod_outer * (1.0 + opt.numeric_tolerance), mod_outer, mod_inner, true};
}

CoverRelation cover_modulus_relation(double rho, int d) {
    if (d < 1) throw std::invalid_argument("cover degree must be at least 1");
    const double mod_domain = modulus_round(rho);
    const double mod_target = modulus_round(std::pow(rho, d));
    const double tol = 1e-12 * std::max(1.0, mod_target);
    return {mod_domain, mod_target, mod_domain / mod_target, std::abs(mod_target - d * mod_domain) <= tol,
            std::abs(mod_domain - d * mod_target) <= tol};
}

double separation_clearance(const BoundarySampling& b, const GeneralizedCircle& c) {
    if (c.is_line()) return -INFINITY;
    const Complex center = c.center();
    if (!point_in_polygon(center, b.outer)) return -INFINITY;
    const Gap g = gap_at(b, center);
    return std::min(c.radius() - g.inner_reach, g.outer_gap - c.radius());
}

std::optional<GeneralizedCircle> search_separating_circle(const BoundarySampling& b, double tol) {
    double lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY;
    for (Complex v : b.outer) {
        lo_x = std::min(lo_x, v.real());
        hi_x = std::max(hi_x, v.real());
        lo_y = std::min(lo_y, v.imag());
        hi_y = std::max(hi_y, v.imag());
    }
    constexpr int kLattice = 32;
    Complex best = area_centroid(b.inner);
    double best_score = gap_at(b, best).score();
    for (int i = 0; i <= kLattice; ++i) {
        for (int j = 0; j <= kLattice; ++j) {
            const Complex c(lo_x + (hi_x - lo_x) * i / kLattice, lo_y + (hi_y - lo_y) * j / kLattice);
            const double s = gap_at(b, c).score();
            if (s > best_score) {
                best_score = s;
                best = c;
            }
        }
    }

    // pattern search: accept improving moves, halve the step otherwise
    const double size = std::max(hi_x - lo_x, hi_y - lo_y);
    double step = size / kLattice;
    static constexpr std::array<Complex, 8> kMoves = {Complex(1, 0),  Complex(-1, 0), Complex(0, 1),
                                                      Complex(0, -1), Complex(1, 1),  Complex(1, -1),
                                                      Complex(-1, 1), Complex(-1, -1)};
    for (int iter = 0; iter < 10000 && step > 1e-13 * size; ++iter) {
        bool moved = false;
        for (Complex m : kMoves) {
            const Complex c = best + step * m;
            const double s = gap_at(b, c).score();
            if (s > best_score) {
                best_score = s;
                best = c;
                moved = true;
                break;
            }
        }
        if (!moved) step *= 0.5;
    }

    if (!(best_score > tol)) return std::nullopt;
    const Gap g = gap_at(b, best);
    return GeneralizedCircle::circle(best, 0.5 * (g.inner_reach + g.outer_gap));
}

std::optional<GeneralizedCircle> find_separating_circle(const AnnulusSpec& a, const AnnulusOptions& opt) {
    const BoundarySampling s = sample_boundaries(a, opt.boundary_samples);
    std::optional<GeneralizedCircle> found;
    if (a.is_round())
        found = GeneralizedCircle::circle(0.0, 1.0);
    else if (const auto* ring = std::get_if<CircleRing>(&a.kind()))
        found = ring_core_circle(*ring);
    else
        found = search_separating_circle(s, opt.tolerance);
    if (found && separation_clearance(s, *found) > opt.tolerance) return found;
    return std::nullopt;
}

Lemma4Measurement lemma4_ratio(const RationalMap& q, const AnnulusSpec& a, const AnnulusSpec& b,
                               const AnnulusOptions& opt) {
    Polyline image = core_curve(a, opt.boundary_samples);
    for (Complex& z : image) z = q(z);
    const BoundarySampling target = sample_boundaries(b, opt.boundary_samples);
    if (!std::ranges::all_of(image, [&](Complex w) { return target.contains(w); }))
        throw std::invalid_argument("image of the core curve leaves the target annulus");
    const int winding = winding_number(target.inner_point(), image);
    if (winding == 0) throw std::invalid_argument("image of the core curve is not essential in the target annulus");
    const double mod_a = modulus(a, opt), mod_b = modulus(b, opt);
    return {mod_a, mod_b, mod_a / mod_b, winding, a.is_mapped() || b.is_mapped()};
}

std::string render_svg(const BoundarySampling& b, const std::optional<GeneralizedCircle>& circle) {
    double lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY;
    for (Complex v : b.outer) {
        lo_x = std::min(lo_x, v.real());
        hi_x = std::max(hi_x, v.real());
        lo_y = std::min(lo_y, v.imag());
        hi_y = std::max(hi_y, v.imag());
    }
    const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y);
    svg::Document doc(lo_x - pad, lo_y - pad, hi_x + pad, hi_y + pad);
    const double stroke = pad / 10.0;
    doc.polygon(b.inner, "black", stroke, "annulus-inner");
    doc.polygon(b.outer, "black", stroke, "annulus-outer");
    if (circle && !circle->is_line()) doc.circle_path(circle->center(), circle->radius(), "red", stroke, "separating-circle");
    return doc.str();
}

}  // namespace klein::annulus

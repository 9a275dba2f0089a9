#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "klein/annulus.hpp"

namespace klein::annulus {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double modulus_round(double r) {
    if (!(r > 1.0) || !std::isfinite(r)) throw std::invalid_argument("modulus_round needs r > 1");
    return std::log(r) / kPi;
}

double modulus_circle_ring(const GeneralizedCircle& inner, const GeneralizedCircle& outer) {
    if (geom::relation(inner, outer) != geom::CircleRelation::disjoint_nested || inner.is_line() || outer.is_line())
        throw std::invalid_argument("modulus_circle_ring needs disjoint nested circles");
    return std::acosh(geom::inversive_distance(inner, outer)) / (2.0 * kPi);
}

double modulus_circle_ring(const CircleRing& ring) { return modulus_circle_ring(ring.inner, ring.outer); }

std::optional<double> closed_form_modulus(const AnnulusSpec& a) {
    if (const auto* r = std::get_if<Round>(&a.kind())) return modulus_round(r->r);
    if (const auto* ring = std::get_if<CircleRing>(&a.kind())) return modulus_circle_ring(*ring);
    return std::nullopt;
}

GeneralizedCircle ring_core_circle(const CircleRing& ring) {
    const Complex c1 = ring.inner.center(), c2 = ring.outer.center();
    const double r1 = ring.inner.radius(), r2 = ring.outer.radius();
    const double dist = std::abs(c1 - c2);
    if (dist == 0.0) return GeneralizedCircle::circle(c2, std::sqrt(r1 * r2));

    // Limit points of the pencil on the line of centers, in coordinates with the
    // outer center at 0 and the inner one at dist: x y = r2^2 and
    // (x - dist)(y - dist) = r1^2.
    const Complex e = (c1 - c2) / dist;
    const double sum = (r2 * r2 + dist * dist - r1 * r1) / dist;
    const double root = std::sqrt(std::max(0.0, sum * sum / 4.0 - r2 * r2));
    const double near = sum / 2.0 - root;  // inside the inner disk
    const double far = r2 * r2 / near;
    const Complex x = c2 + e * near, y = c2 + e * far;
    const geom::MoebiusMap t(1.0, -x, 1.0, -y);
    const double rho1 = std::abs(t(c1 + e * r1));
    const double rho2 = std::abs(t(c2 + e * r2));
    return geom::apply(t.inverse(), GeneralizedCircle::circle(0.0, std::sqrt(rho1 * rho2)));
}

double modulus_numeric(const BoundarySampling& b, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("grid step must be positive");
    const Complex z0 = b.inner_point();
    const double r_min = distance_to_polyline(z0, b.inner);
    const double r_max = max_vertex_distance(z0, b.outer);

    const int n_phi = std::max(8, static_cast<int>(std::ceil(2.0 * kPi / h)));
    const double step = 2.0 * kPi / n_phi;
    const double s_lo = std::log(r_min) - 2.0 * step;
    const double s_hi = std::log(r_max) + 2.0 * step;
    const int n_s = static_cast<int>(std::ceil((s_hi - s_lo) / step)) + 1;
    if (static_cast<double>(n_s) * n_phi > 2e7) throw GridError("grid step too small for this annulus");
    // off-lattice phase so rays avoid regularly spaced sample vertices
    constexpr double kPhase = 0.3819660112501051;

    auto phi_of = [&](int j) { return (j + kPhase) * step; };
    auto s_of = [&](int i) { return s_lo + i * step; };
    auto node = [&](int i, int j) { return static_cast<std::size_t>(j) * n_s + i; };

    enum : std::uint8_t { kInner, kOuter, kFree };
    std::vector<std::uint8_t> state(static_cast<std::size_t>(n_s) * n_phi);
    std::vector<std::vector<double>> cross_in(n_phi), cross_out(n_phi);
    for (int j = 0; j < n_phi; ++j) {
        const Complex dir = std::polar(1.0, phi_of(j));
        cross_in[j] = ray_crossings(z0, dir, b.inner);
        cross_out[j] = ray_crossings(z0, dir, b.outer);
        for (int i = 0; i < n_s; ++i) {
            const double t = std::exp(s_of(i));
            auto beyond = [t](const std::vector<double>& c) { return c.end() - std::upper_bound(c.begin(), c.end(), t); };
            const bool in_inner = beyond(cross_in[j]) % 2 == 1;
            const bool in_outer = beyond(cross_out[j]) % 2 == 1;
            state[node(i, j)] = in_inner ? kInner : (in_outer ? kFree : kOuter);
        }
    }

    std::vector<int> index(state.size(), -1);
    int unknowns = 0;
    for (std::size_t k = 0; k < state.size(); ++k)
        if (state[k] == kFree) index[k] = unknowns++;
    if (unknowns == 0) throw GridError("no grid node lies between the boundaries");

    struct Link {
        int a;
        int b;  // -1 for a boundary value
        double w;
        double value;
    };
    std::vector<Link> links;
    constexpr double kMinFraction = 1e-6;

    // Fraction of the edge from the free node to the crossing of `poly`.
    auto radial_fraction = [&](int j, int i_free, int i_other, bool inner) {
        const std::vector<double>& c = inner ? cross_in[j] : cross_out[j];
        const double t = std::exp(s_of(i_free));
        double hit;
        if (i_other > i_free) {
            auto it = std::upper_bound(c.begin(), c.end(), t);
            hit = it == c.end() ? std::exp(s_of(i_other)) : *it;
        } else {
            auto it = std::lower_bound(c.begin(), c.end(), t);
            hit = it == c.begin() ? std::exp(s_of(i_other)) : *std::prev(it);
        }
        return std::clamp(std::abs(std::log(hit) - s_of(i_free)) / step, kMinFraction, 1.0);
    };
    auto angular_fraction = [&](int i, int j_free, double direction, bool inner) {
        const Polyline& poly = inner ? b.inner : b.outer;
        const double t = std::exp(s_of(i));
        const bool free_side = !inner;  // free nodes are inside outer, outside inner
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 48; ++it) {
            const double mid = 0.5 * (lo + hi);
            const Complex z = z0 + std::polar(t, phi_of(j_free) + direction * mid * step);
            if (point_in_polygon(z, poly) == free_side)
                lo = mid;
            else
                hi = mid;
        }
        return std::clamp(0.5 * (lo + hi), kMinFraction, 1.0);
    };

    auto connect = [&](std::size_t na, std::size_t nb, auto fraction_of) {
        const std::uint8_t sa = state[na], sb = state[nb];
        if (sa != kFree && sb != kFree) {
            if (sa != sb) throw GridError("grid step too coarse: a grid edge joins the two boundary regions");
            return;
        }
        if (sa == kFree && sb == kFree) {
            links.push_back({index[na], index[nb], 1.0, 0.0});
            return;
        }
        const bool a_free = sa == kFree;
        const std::uint8_t boundary = a_free ? sb : sa;
        const double theta = fraction_of(a_free, boundary == kInner);
        links.push_back({index[a_free ? na : nb], -1, 1.0 / theta, boundary == kInner ? 0.0 : 1.0});
    };

    for (int j = 0; j < n_phi; ++j) {
        const int jn = (j + 1) % n_phi;
        for (int i = 0; i < n_s; ++i) {
            if (i + 1 < n_s)
                connect(node(i, j), node(i + 1, j), [&](bool a_free, bool inner) {
                    return a_free ? radial_fraction(j, i, i + 1, inner) : radial_fraction(j, i + 1, i, inner);
                });
            connect(node(i, j), node(i, jn), [&](bool a_free, bool inner) {
                return a_free ? angular_fraction(i, j, 1.0, inner) : angular_fraction(i, jn, -1.0, inner);
            });
        }
    }

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(links.size() * 4);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
    for (const Link& l : links) {
        triplets.emplace_back(l.a, l.a, l.w);
        if (l.b >= 0) {
            triplets.emplace_back(l.b, l.b, l.w);
            triplets.emplace_back(l.a, l.b, -l.w);
            triplets.emplace_back(l.b, l.a, -l.w);
        } else {
            rhs[l.a] += l.w * l.value;
        }
    }
    Eigen::SparseMatrix<double> lap(unknowns, unknowns);
    lap.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(lap);
    if (solver.info() != Eigen::Success) throw GridError("discrete Laplacian factorization failed");
    const Eigen::VectorXd u = solver.solve(rhs);

    double energy = 0.0;
    for (const Link& l : links) {
        const double du = u[l.a] - (l.b >= 0 ? u[l.b] : l.value);
        energy += l.w * du * du;
    }
    if (!(energy > 0.0)) throw GridError("boundaries are not connected through the grid");
    return 1.0 / energy;
}

double modulus(const AnnulusSpec& a, const AnnulusOptions& opt) {
    if (auto closed = closed_form_modulus(a)) return *closed;
    return modulus_numeric(sample_boundaries(a, opt.boundary_samples), opt.grid_h);
}

}  // namespace klein::annulus

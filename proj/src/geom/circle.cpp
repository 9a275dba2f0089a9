#include "klein/geom/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace klein::geom {

namespace {

// Sign that brings (p, q, s) to the canonical orientation.
double canonical_sign(double p, Complex q) {
    if (p != 0.0) return p > 0.0 ? 1.0 : -1.0;
    if (q.real() != 0.0) return q.real() > 0.0 ? 1.0 : -1.0;
    return q.imag() >= 0.0 ? 1.0 : -1.0;
}

struct Triple {
    double p;
    Complex q;
    double s;
};

// (M^-1)^* H M^-1 for H = [[p, q], [conj q, s]].
Triple transform(const MoebiusMap& m, const GeneralizedCircle& c) {
    const Complex u1 = m.d(), u2 = -m.c();  // first column of M^-1
    const Complex v1 = -m.b(), v2 = m.a();  // second column
    auto herm = [&](Complex x1, Complex x2, Complex y1, Complex y2) {
        return std::conj(x1) * (c.p() * y1 + c.q() * y2) + std::conj(x2) * (std::conj(c.q()) * y1 + c.s() * y2);
    };
    const double p = herm(u1, u2, u1, u2).real();
    const Complex q = herm(u1, u2, v1, v2);
    const double s = herm(v1, v2, v1, v2).real();
    return {p, q, s};
}

constexpr double kLineSnap = 1e-12;

}  // namespace

GeneralizedCircle::GeneralizedCircle(double p, Complex q, double s) {
    const double disc = std::norm(q) - p * s;
    if (!(disc > 0.0) || !std::isfinite(disc))
        throw std::invalid_argument("GeneralizedCircle: degenerate locus (|q|^2 - ps <= 0)");
    const double k = canonical_sign(p, q) / std::sqrt(disc);
    p_ = p * k;
    q_ = q * k;
    s_ = s * k;
}

GeneralizedCircle GeneralizedCircle::circle(Complex center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("GeneralizedCircle: radius must be positive");
    return {1.0, -center, std::norm(center) - radius * radius};
}

GeneralizedCircle GeneralizedCircle::line(Complex z1, Complex z2) {
    if (z1 == z2) throw std::invalid_argument("GeneralizedCircle: line needs two distinct points");
    const Complex normal = Complex(0.0, 1.0) * (z2 - z1);
    return {0.0, normal, -2.0 * (std::conj(normal) * z1).real()};
}

GeneralizedCircle GeneralizedCircle::through(Complex z1, Complex z2, Complex z3) {
    const Complex u = z2 - z1, v = z3 - z1;
    const double cross = (std::conj(u) * v).imag();
    const double scale = std::abs(u) * std::abs(v);
    if (scale == 0.0) throw std::invalid_argument("GeneralizedCircle: repeated point");
    if (std::abs(cross) <= 1e-14 * scale) return line(z1, z2);
    // circumcenter relative to z1
    const Complex center = z1 + (std::norm(u) * v - std::norm(v) * u) / Complex(0.0, 2.0 * cross);
    return circle(center, std::abs(center - z1));
}

Complex GeneralizedCircle::center() const {
    if (is_line()) throw std::logic_error("GeneralizedCircle: a line has no center");
    return -q_ / p_;
}

double GeneralizedCircle::radius() const {
    if (is_line()) throw std::logic_error("GeneralizedCircle: a line has no radius");
    return 1.0 / p_;
}

double GeneralizedCircle::distance(Complex z) const {
    if (is_line()) return std::abs(form(z)) / (2.0 * std::abs(q_));
    return std::abs(std::abs(z - center()) - radius());
}

std::vector<Complex> GeneralizedCircle::sample(int n, double line_step) const {
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(std::max(n, 0)));
    if (is_line()) {
        const Complex foot = -s_ * q_ / (2.0 * std::norm(q_));
        const Complex dir = Complex(0.0, 1.0) * q_ / std::abs(q_);
        for (int k = 0; k < n; ++k) out.push_back(foot + (k - 0.5 * (n - 1)) * line_step * dir);
        return out;
    }
    const Complex c = center();
    const double r = radius();
    for (int k = 0; k < n; ++k) out.push_back(c + std::polar(r, 2.0 * std::numbers::pi * k / n));
    return out;
}

bool approx_equal(const GeneralizedCircle& c1, const GeneralizedCircle& c2, double tol) {
    return std::abs(c1.p() - c2.p()) <= tol && std::abs(c1.q() - c2.q()) <= tol && std::abs(c1.s() - c2.s()) <= tol;
}

bool OrientedCircle::contains(const SpherePoint& z, double tol) const {
    if (z.is_infinite()) {
        if (circle.is_line()) return false;
        return side == Side::exterior;
    }
    const Complex w = z.value();
    double signed_gap;  // positive inside the chosen region
    if (circle.is_line()) {
        signed_gap = -circle.form(w) / (2.0 * std::abs(circle.q()));
    } else {
        signed_gap = circle.radius() - std::abs(w - circle.center());
    }
    if (side == Side::exterior) signed_gap = -signed_gap;
    return signed_gap > tol;
}

GeneralizedCircle apply(const MoebiusMap& m, const GeneralizedCircle& c) {
    Triple t = transform(m, c);
    const double disc = std::norm(t.q) - t.p * t.s;
    if (std::abs(t.p) <= kLineSnap * std::sqrt(disc)) t.p = 0.0;
    return {t.p, t.q, t.s};
}

OrientedCircle apply(const MoebiusMap& m, const OrientedCircle& oc) {
    Triple t = transform(m, oc.circle);
    const double disc = std::norm(t.q) - t.p * t.s;
    if (std::abs(t.p) <= kLineSnap * std::sqrt(disc)) t.p = 0.0;
    const bool flipped = canonical_sign(t.p, t.q) < 0.0;
    Side side = oc.side;
    if (flipped) side = side == Side::interior ? Side::exterior : Side::interior;
    return {GeneralizedCircle(t.p, t.q, t.s), side};
}

double signed_inversive_product(const GeneralizedCircle& c1, const GeneralizedCircle& c2) {
    return 0.5 * (c1.p() * c2.s() + c2.p() * c1.s()) - (c1.q() * std::conj(c2.q())).real();
}

double inversive_distance(const GeneralizedCircle& c1, const GeneralizedCircle& c2) {
    return std::abs(signed_inversive_product(c1, c2));
}

std::string_view to_string(CircleRelation r) {
    switch (r) {
        case CircleRelation::disjoint_external: return "disjoint_external";
        case CircleRelation::disjoint_nested: return "disjoint_nested";
        case CircleRelation::tangent: return "tangent";
        case CircleRelation::crossing: return "crossing";
    }
    return "unknown";
}

CircleRelation relation(const GeneralizedCircle& c1, const GeneralizedCircle& c2, double tol) {
    const double delta = signed_inversive_product(c1, c2);
    if (std::abs(delta) > 1.0 + tol) {
        if (delta < 0.0 && !c1.is_line() && !c2.is_line()) return CircleRelation::disjoint_nested;
        return CircleRelation::disjoint_external;
    }
    if (std::abs(delta) < 1.0 - tol) return CircleRelation::crossing;
    return CircleRelation::tangent;
}

}  // namespace klein::geom

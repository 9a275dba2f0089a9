#include "klein/geom/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace klein::geom {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool lex_less(Complex u, Complex v) {
    if (u.real() != v.real()) return u.real() < v.real();
    return u.imag() < v.imag();
}

}  // namespace

SpherePoint::SpherePoint(Complex z) : value_(z) {
    if (!finite(z)) throw std::domain_error("SpherePoint: non-finite coordinates");
}

Complex SpherePoint::value() const {
    if (!value_) throw std::logic_error("SpherePoint: value() at infinity");
    return *value_;
}

double chordal_distance(Complex a, Complex b) {
    return std::abs(a - b) / (std::sqrt(1.0 + std::norm(a)) * std::sqrt(1.0 + std::norm(b)));
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
    if (a.is_infinite() && b.is_infinite()) return 0.0;
    if (a.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(b.value()));
    if (b.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(a.value()));
    return chordal_distance(a.value(), b.value());
}

std::string_view to_string(MoebiusKind kind) {
    switch (kind) {
        case MoebiusKind::identity: return "identity";
        case MoebiusKind::parabolic: return "parabolic";
        case MoebiusKind::elliptic: return "elliptic";
        case MoebiusKind::loxodromic: return "loxodromic";
    }
    return "unknown";
}

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) {
    if (!finite(a) || !finite(b) || !finite(c) || !finite(d))
        throw std::invalid_argument("MoebiusMap: non-finite coefficient");
    const Complex det = a * d - b * c;
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (scale == 0.0 || std::abs(det) <= 1e-14 * scale * scale)
        throw std::invalid_argument("MoebiusMap: determinant is zero");
    const Complex root = std::sqrt(det);
    a_ = a / root;
    b_ = b / root;
    c_ = c / root;
    d_ = d / root;
}

MoebiusMap MoebiusMap::scaling(Complex k) { return {k, 0.0, 0.0, 1.0}; }
MoebiusMap MoebiusMap::translation(Complex t) { return {1.0, t, 0.0, 1.0}; }

MoebiusMap MoebiusMap::inverse() const { return {d_, -b_, -c_, a_}; }

SpherePoint MoebiusMap::operator()(const SpherePoint& z) const {
    if (z.is_infinite()) {
        if (c_ == 0.0) return SpherePoint::infinity();
        return SpherePoint(a_ / c_);
    }
    const Complex w = z.value();
    const Complex denom = c_ * w + d_;
    if (denom == 0.0) return SpherePoint::infinity();
    const Complex image = (a_ * w + b_) / denom;
    if (!finite(image)) return SpherePoint::infinity();
    return SpherePoint(image);
}

Complex MoebiusMap::operator()(Complex z) const {
    const Complex denom = c_ * z + d_;
    if (denom == 0.0) throw std::domain_error("MoebiusMap: evaluation at the pole");
    return (a_ * z + b_) / denom;
}

Complex MoebiusMap::derivative(Complex z) const {
    const Complex denom = c_ * z + d_;
    return 1.0 / (denom * denom);
}

MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) {
    const Complex a = m1.a() * m2.a() + m1.b() * m2.c(), b = m1.a() * m2.b() + m1.b() * m2.d();
    const Complex c = m1.c() * m2.a() + m1.d() * m2.c(), d = m1.c() * m2.b() + m1.d() * m2.d();
    if (!finite(a) || !finite(b) || !finite(c) || !finite(d))
        throw std::invalid_argument("MoebiusMap: non-finite coefficient");
    // the product is unimodular; renormalize only while the determinant is
    // still computed accurately (long words with large entries cancel badly)
    const Complex det = a * d - b * c;
    if (std::abs(det - 1.0) < 1e-6) {
        const Complex root = std::sqrt(det);
        return {MoebiusMap::Unimodular{}, a / root, b / root, c / root, d / root};
    }
    return {MoebiusMap::Unimodular{}, a, b, c, d};
}

bool approx_equal(const MoebiusMap& m1, const MoebiusMap& m2, double tol) {
    auto gap = [&](double sign) {
        return std::max({std::abs(m1.a() - sign * m2.a()), std::abs(m1.b() - sign * m2.b()),
                         std::abs(m1.c() - sign * m2.c()), std::abs(m1.d() - sign * m2.d())});
    };
    return std::min(gap(1.0), gap(-1.0)) <= tol;
}

double distance_to_identity(const MoebiusMap& m) {
    auto gap = [&](double sign) {
        return std::max({std::abs(m.a() - sign), std::abs(m.b()), std::abs(m.c()), std::abs(m.d() - sign)});
    };
    return std::min(gap(1.0), gap(-1.0));
}

MoebiusKind classify(const MoebiusMap& m, double tol) {
    if (distance_to_identity(m) <= tol) return MoebiusKind::identity;
    const Complex tr2 = m.trace() * m.trace();
    if (std::abs(tr2 - 4.0) <= tol) return MoebiusKind::parabolic;
    if (std::abs(tr2.imag()) <= tol && tr2.real() >= -tol && tr2.real() < 4.0) return MoebiusKind::elliptic;
    return MoebiusKind::loxodromic;
}

FixedPoints fixed_points(const MoebiusMap& m, double tol) {
    const MoebiusKind kind = classify(m, tol);
    if (kind == MoebiusKind::identity) throw std::invalid_argument("fixed_points: identity map");

    const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const double scale = std::abs(a) + std::abs(b) + std::abs(d);

    struct Candidate {
        SpherePoint point;
        Complex multiplier;
    };
    std::vector<Candidate> points;

    if (std::abs(c) <= 1e-15 * scale) {
        // Affine map z -> (a z + b) / d fixes infinity.
        points.push_back({SpherePoint::infinity(), d / a});
        if (kind != MoebiusKind::parabolic) points.push_back({SpherePoint(b / (d - a)), a / d});
    } else if (kind == MoebiusKind::parabolic) {
        points.push_back({SpherePoint((a - d) / (2.0 * c)), 1.0});
    } else {
        const Complex root = std::sqrt(m.trace() * m.trace() - 4.0);
        for (double sign : {1.0, -1.0}) {
            const Complex z = (a - d + sign * root) / (2.0 * c);
            points.push_back({SpherePoint(z), m.derivative(z)});
        }
    }

    if (points.size() == 2) {
        bool swap = false;
        if (kind == MoebiusKind::loxodromic) {
            swap = std::abs(points[1].multiplier) < std::abs(points[0].multiplier);
        } else if (points[0].point.is_infinite()) {
            swap = true;
        } else if (points[1].point.is_finite()) {
            swap = lex_less(points[1].point.value(), points[0].point.value());
        }
        if (swap) std::swap(points[0], points[1]);
        return {points[0].point, points[1].point, points[0].multiplier};
    }
    return {points[0].point, std::nullopt, points[0].multiplier};
}

}  // namespace klein::geom

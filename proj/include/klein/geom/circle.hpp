#pragma once

#include <string_view>
#include <vector>

#include "klein/geom/moebius.hpp"

namespace klein::geom {

/// Circle or line as a Hermitian triple: the locus
///   p |z|^2 + conj(q) z + q conj(z) + s = 0.
/// Normalized so |q|^2 - p s = 1 with p > 0 for circles; lines have p = 0
/// and the first nonzero coordinate of q positive. For circles the center is
/// -q / p and the radius 1 / p.
class GeneralizedCircle {
public:
    /// Normalizes; throws std::invalid_argument if |q|^2 - p s <= 0.
    GeneralizedCircle(double p, Complex q, double s);

    static GeneralizedCircle circle(Complex center, double radius);
    /// Line through two distinct points.
    static GeneralizedCircle line(Complex z1, Complex z2);
    /// Unique generalized circle through three distinct finite points.
    static GeneralizedCircle through(Complex z1, Complex z2, Complex z3);

    double p() const { return p_; }
    Complex q() const { return q_; }
    double s() const { return s_; }

    bool is_line() const { return p_ == 0.0; }
    /// Throws std::logic_error for lines.
    Complex center() const;
    double radius() const;

    /// Value of the defining form: negative inside a circle.
    double form(Complex z) const { return p_ * std::norm(z) + 2.0 * (std::conj(q_) * z).real() + s_; }
    /// Euclidean distance from z to the locus.
    double distance(Complex z) const;
    bool contains_point(Complex z, double tol = 1e-9) const { return distance(z) <= tol; }

    /// n points evenly spaced (for lines: symmetric about the foot of the
    /// perpendicular from 0, spacing `line_step`).
    std::vector<Complex> sample(int n, double line_step = 1.0) const;

private:
    double p_;
    Complex q_;
    double s_;
};

bool approx_equal(const GeneralizedCircle& c1, const GeneralizedCircle& c2, double tol = 1e-9);

enum class Side { interior, exterior };

/// A circle together with one of its complementary regions. For circles
/// `interior` is the bounded disk; for lines it is the half-plane where the
/// normalized form is negative.
struct OrientedCircle {
    GeneralizedCircle circle;
    Side side;

    bool contains(const SpherePoint& z, double tol = 1e-9) const;  // strict, with margin tol
};

GeneralizedCircle apply(const MoebiusMap& m, const GeneralizedCircle& c);
OrientedCircle apply(const MoebiusMap& m, const OrientedCircle& oc);

/// Möbius-invariant |(|z1 - z2|^2 - r1^2 - r2^2) / (2 r1 r2)| generalized to
/// lines through the Hermitian pairing: > 1 disjoint, = 1 tangent, < 1 crossing.
double inversive_distance(const GeneralizedCircle& c1, const GeneralizedCircle& c2);

/// Signed version: negative for nested circles, positive for external ones.
double signed_inversive_product(const GeneralizedCircle& c1, const GeneralizedCircle& c2);

enum class CircleRelation { disjoint_external, disjoint_nested, tangent, crossing };

std::string_view to_string(CircleRelation r);

CircleRelation relation(const GeneralizedCircle& c1, const GeneralizedCircle& c2, double tol = 1e-9);

}  // namespace klein::geom

#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "klein/geom/sphere_point.hpp"

namespace klein::geom {

enum class MoebiusKind { identity, parabolic, elliptic, loxodromic };

std::string_view to_string(MoebiusKind kind);

// z -> (a z + b) / (c z + d), stored with ad - bc = 1.
class MoebiusMap {
public:
    /// Normalizes by a square root of the determinant. Throws
    /// std::invalid_argument if ad - bc vanishes or a coefficient is not finite.
    MoebiusMap(Complex a, Complex b, Complex c, Complex d);

    static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static MoebiusMap scaling(Complex k);
    static MoebiusMap translation(Complex t);

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }

    Complex determinant() const { return a_ * d_ - b_ * c_; }
    Complex trace() const { return a_ + d_; }

    MoebiusMap inverse() const;
    SpherePoint operator()(const SpherePoint& z) const;
    Complex operator()(Complex z) const;  // finite-in, finite-out; throws at the pole

    /// Derivative at a finite non-pole point.
    Complex derivative(Complex z) const;

private:
    friend MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2);
    struct Unimodular {};
    // Coefficients already of determinant one up to rounding.
    MoebiusMap(Unimodular, Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {}

    Complex a_, b_, c_, d_;
};

/// m1 ∘ m2 (m2 applied first).
MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2);
inline MoebiusMap operator*(const MoebiusMap& m1, const MoebiusMap& m2) { return compose(m1, m2); }

/// Equality up to the global sign of the normalized coefficients.
bool approx_equal(const MoebiusMap& m1, const MoebiusMap& m2, double tol = 1e-12);

/// Max coefficient distance to the identity, up to sign.
double distance_to_identity(const MoebiusMap& m);

MoebiusKind classify(const MoebiusMap& m, double tol = 1e-9);

struct FixedPoints {
    SpherePoint first;
    std::optional<SpherePoint> second;
    /// Derivative at `first` (in the chart w = 1/z when `first` is infinity).
    Complex multiplier;
};

/// Attracting point first for loxodromic maps; otherwise finite points in
/// lexicographic (re, im) order with infinity last. Throws
/// std::invalid_argument for the identity.
FixedPoints fixed_points(const MoebiusMap& m, double tol = 1e-9);

}  // namespace klein::geom

#pragma once

#include <complex>
#include <optional>

namespace klein {

using Complex = std::complex<double>;

/// Tolerances shared by the geometric code. Predicates (on-circle, disjoint,
/// inside) use `geometric`; algebraic identities use `algebraic`.
struct Tolerance {
    double geometric = 1e-9;
    double algebraic = 1e-12;
};

namespace geom {

/// A point of the Riemann sphere: a finite complex value or infinity.
class SpherePoint {
public:
    /// Throws std::domain_error for NaN or infinite coordinates.
    explicit SpherePoint(Complex z);
    SpherePoint(double re, double im = 0.0) : SpherePoint(Complex(re, im)) {}

    static SpherePoint infinity() { return SpherePoint(); }

    bool is_infinite() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }

    /// Throws std::logic_error at infinity.
    Complex value() const;

    friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

private:
    SpherePoint() = default;
    std::optional<Complex> value_;
};

/// Chordal distance on the unit-diameter Riemann sphere; bounded by 1.
double chordal_distance(const SpherePoint& a, const SpherePoint& b);
double chordal_distance(Complex a, Complex b);

}  // namespace geom
}  // namespace klein

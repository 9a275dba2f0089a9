#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "klein/annulus.hpp"

namespace klein::annulus {

namespace {

Complex ipow(Complex z, int k) {
    if (k < 0) return 1.0 / ipow(z, -k);
    Complex result = 1.0;
    while (k > 0) {
        if (k & 1) result *= z;
        z *= z;
        k >>= 1;
    }
    return result;
}

Complex horner(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Polyline circle_points(Complex center, double radius, int n) {
    Polyline out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out.push_back(center + std::polar(radius, 2.0 * std::numbers::pi * k / n));
    return out;
}

Polyline mapped_circle(const LaurentMap& f, double radius, int n) {
    Polyline out = circle_points(0.0, radius, n);
    for (Complex& z : out) z = f(z);
    return out;
}

void require_samples(int n) {
    if (n < 8) throw std::invalid_argument("at least 8 boundary samples are required");
}

}  // namespace

LaurentMap::LaurentMap(std::map<int, Complex> coefficients) {
    for (const auto& [k, c] : coefficients) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("Laurent coefficient is not finite");
        if (c != 0.0) coeffs_.emplace(k, c);
    }
    const bool constant = std::none_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.first != 0; });
    if (constant) throw std::invalid_argument("Laurent map is constant");
}

Complex LaurentMap::operator()(Complex z) const {
    Complex acc = 0.0;
    for (const auto& [k, c] : coeffs_) acc += c * ipow(z, k);
    return acc;
}

Complex LaurentMap::derivative(Complex z) const {
    Complex acc = 0.0;
    for (const auto& [k, c] : coeffs_)
        if (k != 0) acc += static_cast<double>(k) * c * ipow(z, k - 1);
    return acc;
}

RationalMap RationalMap::power(int d) {
    if (d < 1) throw std::invalid_argument("power must be positive");
    RationalMap q;
    q.num.assign(static_cast<std::size_t>(d) + 1, 0.0);
    q.num.back() = 1.0;
    return q;
}

Complex RationalMap::operator()(Complex z) const {
    const Complex den_value = horner(den, z);
    if (den_value == 0.0) throw std::domain_error("rational map evaluated at a pole");
    return horner(num, z) / den_value;
}

AnnulusSpec AnnulusSpec::round(double r) {
    if (!(r > 1.0) || !std::isfinite(r)) throw std::invalid_argument("round annulus needs r > 1");
    return AnnulusSpec(Round{r});
}

AnnulusSpec AnnulusSpec::ring(const GeneralizedCircle& inner, const GeneralizedCircle& outer, double tol) {
    if (inner.is_line() || outer.is_line()) throw std::invalid_argument("ring boundaries must be circles");
    const double gap = outer.radius() - inner.radius() - std::abs(inner.center() - outer.center());
    if (!(gap > tol)) throw std::invalid_argument("ring inner circle is not strictly inside the outer circle");
    return AnnulusSpec(CircleRing{inner, outer});
}

AnnulusSpec AnnulusSpec::mapped(double r, LaurentMap f, int samples) {
    if (!(r > 1.0) || !std::isfinite(r)) throw std::invalid_argument("mapped annulus needs base r > 1");
    require_samples(samples);
    const Polyline in = mapped_circle(f, 1.0 / r, samples);
    const Polyline out = mapped_circle(f, r, samples);
    for (const Polyline* curve : {&in, &out})
        for (Complex z : *curve)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw std::invalid_argument("Laurent map is not finite on the base annulus");
    if (!is_simple(in) || !is_simple(out)) throw std::invalid_argument("Laurent map is not injective: boundary image self-intersects");
    if (polylines_intersect(in, out)) throw std::invalid_argument("Laurent map is not injective: boundary images meet");
    if (!point_in_polygon(in.front(), out) && !point_in_polygon(out.front(), in))
        throw std::invalid_argument("Laurent map is not injective: boundary images are not nested");
    if ((signed_area2(in) > 0.0) != (signed_area2(out) > 0.0))
        throw std::invalid_argument("Laurent map is not injective: boundary orientations differ");
    return AnnulusSpec(Mapped{Round{r}, std::move(f)});
}

BoundarySampling BoundarySampling::from_curves(Polyline a, Polyline b) {
    if (a.size() < 3 || b.size() < 3) throw std::invalid_argument("boundary curves need at least 3 points");
    if (!is_simple(a) || !is_simple(b)) throw std::invalid_argument("boundary curve is not simple");
    if (polylines_intersect(a, b)) throw std::invalid_argument("boundary curves intersect");
    BoundarySampling s;
    if (point_in_polygon(a.front(), b)) {
        s.inner = std::move(a);
        s.outer = std::move(b);
    } else if (point_in_polygon(b.front(), a)) {
        s.inner = std::move(b);
        s.outer = std::move(a);
    } else {
        throw std::invalid_argument("boundary curves are not nested");
    }
    if (signed_area2(s.inner) < 0.0) std::reverse(s.inner.begin(), s.inner.end());
    if (signed_area2(s.outer) < 0.0) std::reverse(s.outer.begin(), s.outer.end());
    s.density = static_cast<int>(std::max(s.inner.size(), s.outer.size()));
    return s;
}

bool BoundarySampling::contains(Complex z) const { return point_in_polygon(z, outer) && !point_in_polygon(z, inner); }

Complex BoundarySampling::inner_point() const {
    const Complex centroid = area_centroid(inner);
    double lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY;
    for (Complex v : inner) {
        lo_x = std::min(lo_x, v.real());
        hi_x = std::max(hi_x, v.real());
        lo_y = std::min(lo_y, v.imag());
        hi_y = std::max(hi_y, v.imag());
    }
    const double size = std::max(hi_x - lo_x, hi_y - lo_y);
    if (point_in_polygon(centroid, inner) && distance_to_polyline(centroid, inner) > 0.05 * size) return centroid;

    // non-convex curve: take the lattice point deepest inside
    constexpr int n = 64;
    Complex best = centroid;
    double best_depth = -1.0;
    for (int i = 1; i < n; ++i) {
        for (int j = 1; j < n; ++j) {
            const Complex z(lo_x + (hi_x - lo_x) * i / n, lo_y + (hi_y - lo_y) * j / n);
            if (!point_in_polygon(z, inner)) continue;
            const double depth = distance_to_polyline(z, inner);
            if (depth > best_depth) {
                best_depth = depth;
                best = z;
            }
        }
    }
    if (best_depth <= 0.0) throw std::invalid_argument("inner boundary encloses no lattice point");
    return best;
}

BoundarySampling sample_boundaries(const AnnulusSpec& a, int samples) {
    require_samples(samples);
    return std::visit(
        [samples](const auto& k) -> BoundarySampling {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Round>) {
                return BoundarySampling::from_curves(circle_points(0.0, 1.0 / k.r, samples),
                                                     circle_points(0.0, k.r, samples));
            } else if constexpr (std::is_same_v<T, CircleRing>) {
                return BoundarySampling::from_curves(k.inner.sample(samples), k.outer.sample(samples));
            } else {
                return BoundarySampling::from_curves(mapped_circle(k.f, 1.0 / k.base.r, samples),
                                                     mapped_circle(k.f, k.base.r, samples));
            }
        },
        a.kind());
}

Polyline core_curve(const AnnulusSpec& a, int samples) {
    require_samples(samples);
    return std::visit(
        [samples](const auto& k) -> Polyline {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Round>) {
                return circle_points(0.0, 1.0, samples);
            } else if constexpr (std::is_same_v<T, CircleRing>) {
                return ring_core_circle(k).sample(samples);
            } else {
                return mapped_circle(k.f, 1.0, samples);
            }
        },
        a.kind());
}

Json to_json(const LaurentMap& f) {
    Json j = Json::object();
    for (const auto& [k, c] : f.coefficients()) j[std::to_string(k)] = geom::complex_to_json(c);
    return j;
}

LaurentMap laurent_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("expected Laurent coefficient object");
    std::map<int, Complex> coeffs;
    for (const auto& [key, value] : j.items()) {
        std::size_t used = 0;
        int k = 0;
        try {
            k = std::stoi(key, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != key.size() || key.empty()) throw std::invalid_argument("bad Laurent exponent: " + key);
        coeffs[k] += geom::complex_from_json(value);
    }
    return LaurentMap(std::move(coeffs));
}

Json to_json(const RationalMap& q) {
    Json num = Json::array(), den = Json::array();
    for (Complex c : q.num) num.push_back(geom::complex_to_json(c));
    for (Complex c : q.den) den.push_back(geom::complex_to_json(c));
    return Json{{"num", num}, {"den", den}};
}

RationalMap rational_from_json(const Json& j) {
    RationalMap q;
    q.num.clear();
    for (const Json& c : j.at("num")) q.num.push_back(geom::complex_from_json(c));
    if (j.contains("den")) {
        q.den.clear();
        for (const Json& c : j.at("den")) q.den.push_back(geom::complex_from_json(c));
    }
    if (q.num.empty() || q.den.empty()) throw std::invalid_argument("rational map needs coefficients");
    return q;
}

Json to_json(const AnnulusSpec& a) {
    return std::visit(
        [](const auto& k) -> Json {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Round>) {
                return Json{{"round", {{"r", k.r}}}};
            } else if constexpr (std::is_same_v<T, CircleRing>) {
                return Json{{"ring", {{"inner", geom::to_json(k.inner)}, {"outer", geom::to_json(k.outer)}}}};
            } else {
                return Json{{"mapped", {{"r", k.base.r}, {"laurent", to_json(k.f)}}}};
            }
        },
        a.kind());
}

AnnulusSpec annulus_from_json(const Json& j, int samples) {
    if (!j.is_object() || j.size() != 1) throw std::invalid_argument("annulus descriptor needs exactly one of round, ring, mapped");
    if (j.contains("round")) return AnnulusSpec::round(j.at("round").at("r").get<double>());
    if (j.contains("ring")) {
        const Json& r = j.at("ring");
        return AnnulusSpec::ring(geom::circle_from_json(r.at("inner")), geom::circle_from_json(r.at("outer")));
    }
    if (j.contains("mapped")) {
        const Json& m = j.at("mapped");
        return AnnulusSpec::mapped(m.at("r").get<double>(), laurent_from_json(m.at("laurent")), samples);
    }
    throw std::invalid_argument("unknown annulus descriptor kind");
}

}  // namespace klein::annulus

#include "klein/annulus/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace klein::annulus {

namespace {

double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }

}  // namespace

double distance_to_segment(Complex z, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z - a);
    const double t = std::clamp(((z - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

double distance_to_polyline(Complex z, std::span<const Complex> poly) {
    double best = INFINITY;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) best = std::min(best, distance_to_segment(z, poly[i], poly[(i + 1) % n]));
    return best;
}

double max_vertex_distance(Complex z, std::span<const Complex> poly) {
    double best = 0.0;
    for (Complex v : poly) best = std::max(best, std::abs(v - z));
    return best;
}

bool point_in_polygon(Complex z, std::span<const Complex> poly) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Complex a = poly[i], b = poly[j];
        if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
            const double x = a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
            if (z.real() < x) inside = !inside;
        }
    }
    return inside;
}

double signed_area2(std::span<const Complex> poly) {
    double sum = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) sum += cross(poly[i], poly[(i + 1) % n]);
    return sum;
}

Complex area_centroid(std::span<const Complex> poly) {
    const std::size_t n = poly.size();
    const Complex origin = poly.front();
    double area2 = 0.0;
    Complex acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Complex a = poly[i] - origin, b = poly[(i + 1) % n] - origin;
        const double w = cross(a, b);
        area2 += w;
        acc += w * (a + b);
    }
    if (area2 == 0.0) return origin;
    return origin + acc / (3.0 * area2);
}

int winding_number(Complex z, std::span<const Complex> poly) {
    double total = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) total += std::arg((poly[(i + 1) % n] - z) / (poly[i] - z));
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
    const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
    auto on_segment = [](Complex p, Complex q, Complex r) {
        return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
               std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
    };
    if (d1 == 0 && on_segment(a, b, c)) return true;
    if (d2 == 0 && on_segment(a, b, d)) return true;
    if (d3 == 0 && on_segment(c, d, a)) return true;
    if (d4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

bool is_simple(std::span<const Complex> poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Complex a = poly[i], b = poly[(i + 1) % n];
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
            if (segments_intersect(a, b, poly[j], poly[(j + 1) % n])) return false;
        }
    }
    return true;
}

bool polylines_intersect(std::span<const Complex> p, std::span<const Complex> q) {
    const std::size_t n = p.size(), m = q.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (segments_intersect(p[i], p[(i + 1) % n], q[j], q[(j + 1) % m])) return true;
    return false;
}

std::vector<double> ray_crossings(Complex origin, Complex dir, std::span<const Complex> poly) {
    std::vector<double> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex a = poly[i] - origin, b = poly[(i + 1) % n] - origin;
        const double ca = cross(dir, a), cb = cross(dir, b);
        // half-open rule on the side test so a vertex on the ray counts once
        if ((ca > 0.0) == (cb > 0.0)) continue;
        const double u = ca / (ca - cb);
        const Complex hit = a + u * (b - a);
        const double t = (hit * std::conj(dir)).real() / std::norm(dir);
        if (t > 0.0) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace klein::annulus

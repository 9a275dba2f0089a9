#pragma once

#include <span>
#include <vector>

#include "klein/geom/sphere_point.hpp"

namespace klein::annulus {

/// Closed polyline; the last vertex connects back to the first.
using Polyline = std::vector<Complex>;

double distance_to_segment(Complex z, Complex a, Complex b);
double distance_to_polyline(Complex z, std::span<const Complex> poly);
double max_vertex_distance(Complex z, std::span<const Complex> poly);

/// Even-odd rule.
bool point_in_polygon(Complex z, std::span<const Complex> poly);

/// Twice the signed area; positive for counterclockwise polylines.
double signed_area2(std::span<const Complex> poly);
Complex area_centroid(std::span<const Complex> poly);

/// Winding number of the closed polyline around z.
int winding_number(Complex z, std::span<const Complex> poly);

bool segments_intersect(Complex a, Complex b, Complex c, Complex d);
/// No two non-adjacent edges intersect.
bool is_simple(std::span<const Complex> poly);
bool polylines_intersect(std::span<const Complex> p, std::span<const Complex> q);

/// Parameters t > 0 at which origin + t * dir crosses the polyline, sorted.
std::vector<double> ray_crossings(Complex origin, Complex dir, std::span<const Complex> poly);

}  // namespace klein::annulus

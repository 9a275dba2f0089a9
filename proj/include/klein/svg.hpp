#pragma once

#include <span>
#include <string>
#include <string_view>

#include "klein/geom/sphere_point.hpp"

namespace klein::svg {

/// Fixed six-decimal formatting; negative zero prints as 0.000000.
std::string num(double x);

/// Minimal SVG document builder with a y-up world window.
class Document {
public:
    Document(double min_x, double min_y, double max_x, double max_y, double pixel_width = 800.0);

    void circle_path(Complex center, double radius, std::string_view stroke, double stroke_width,
                     std::string_view css_class);
    void marker(Complex at, double radius, std::string_view fill, std::string_view css_class);
    /// Closed polyline.
    void polygon(std::span<const Complex> points, std::string_view stroke, double stroke_width,
                 std::string_view css_class);
    void line(Complex from, Complex to, std::string_view stroke, double stroke_width, std::string_view css_class);
    void text(Complex at, std::string_view content, double size);

    std::string str() const;

private:
    double x(double world_x) const { return world_x; }
    double y(double world_y) const { return -world_y; }

    double min_x_, min_y_, max_x_, max_y_, width_;
    std::string body_;
};

}  // namespace klein::svg

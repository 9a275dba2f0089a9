#include "klein/svg.hpp"

#include <cmath>
#include <cstdio>

namespace klein::svg {

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    std::string s(buf);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

Document::Document(double min_x, double min_y, double max_x, double max_y, double pixel_width)
    : min_x_(min_x), min_y_(min_y), max_x_(max_x), max_y_(max_y), width_(pixel_width) {}

void Document::circle_path(Complex center, double radius, std::string_view stroke, double stroke_width,
                           std::string_view css_class) {
    const double cx = x(center.real()), cy = y(center.imag());
    body_ += "  <path class=\"" + std::string(css_class) + "\" d=\"M " + num(cx + radius) + " " + num(cy) +
             " A " + num(radius) + " " + num(radius) + " 0 1 0 " + num(cx - radius) + " " + num(cy) + " A " +
             num(radius) + " " + num(radius) + " 0 1 0 " + num(cx + radius) + " " + num(cy) +
             " Z\" fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(stroke_width) +
             "\"/>\n";
}

void Document::marker(Complex at, double radius, std::string_view fill, std::string_view css_class) {
    body_ += "  <circle class=\"" + std::string(css_class) + "\" cx=\"" + num(x(at.real())) + "\" cy=\"" +
             num(y(at.imag())) + "\" r=\"" + num(radius) + "\" fill=\"" + std::string(fill) + "\"/>\n";
}

void Document::polygon(std::span<const Complex> points, std::string_view stroke, double stroke_width,
                       std::string_view css_class) {
    std::string pts;
    for (Complex p : points) {
        if (!pts.empty()) pts += ' ';
        pts += num(x(p.real())) + "," + num(y(p.imag()));
    }
    body_ += "  <polygon class=\"" + std::string(css_class) + "\" points=\"" + pts + "\" fill=\"none\" stroke=\"" +
             std::string(stroke) + "\" stroke-width=\"" + num(stroke_width) + "\"/>\n";
}

void Document::line(Complex from, Complex to, std::string_view stroke, double stroke_width,
                    std::string_view css_class) {
    body_ += "  <line class=\"" + std::string(css_class) + "\" x1=\"" + num(x(from.real())) + "\" y1=\"" +
             num(y(from.imag())) + "\" x2=\"" + num(x(to.real())) + "\" y2=\"" + num(y(to.imag())) +
             "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(stroke_width) + "\"/>\n";
}

void Document::text(Complex at, std::string_view content, double size) {
    body_ += "  <text x=\"" + num(x(at.real())) + "\" y=\"" + num(y(at.imag())) + "\" font-size=\"" + num(size) +
             "\">" + std::string(content) + "</text>\n";
}

std::string Document::str() const {
    const double w = max_x_ - min_x_, h = max_y_ - min_y_;
    const double height = w > 0.0 ? width_ * h / w : width_;
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" +
                      num(height) + "\" viewBox=\"" + num(min_x_) + " " + num(-max_y_) + " " + num(w) + " " +
                      num(h) + "\">\n";
    out += body_;
    out += "</svg>\n";
    return out;
}

}  // namespace klein::svg

#include "klein/geom/io.hpp"

#include <stdexcept>

namespace klein::geom {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("expected complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const SpherePoint& z) {
    if (z.is_infinite()) return "inf";
    return complex_to_json(z.value());
}

SpherePoint sphere_point_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return SpherePoint::infinity();
        throw std::invalid_argument("expected \"inf\" or [re, im]");
    }
    return SpherePoint(complex_from_json(j));
}

Json to_json(const MoebiusMap& m) {
    Json j;
    j["a"] = complex_to_json(m.a());
    j["b"] = complex_to_json(m.b());
    j["c"] = complex_to_json(m.c());
    j["d"] = complex_to_json(m.d());
    return j;
}

MoebiusMap moebius_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("expected Moebius map object");
    return {complex_from_json(j.at("a")), complex_from_json(j.at("b")), complex_from_json(j.at("c")),
            complex_from_json(j.at("d"))};
}

Json to_json(const GeneralizedCircle& c) {
    Json j;
    if (c.is_line()) {
        Json line;
        line["p"] = 0.0;
        line["q"] = complex_to_json(c.q());
        line["s"] = c.s();
        j["line"] = std::move(line);
    } else {
        j["center"] = complex_to_json(c.center());
        j["radius"] = c.radius();
    }
    return j;
}

GeneralizedCircle circle_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("expected circle object");
    if (j.contains("line")) {
        const Json& line = j.at("line");
        return {line.at("p").get<double>(), complex_from_json(line.at("q")), line.at("s").get<double>()};
    }
    return GeneralizedCircle::circle(complex_from_json(j.at("center")), j.at("radius").get<double>());
}

}  // namespace klein::geom

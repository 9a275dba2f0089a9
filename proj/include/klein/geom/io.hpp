#pragma once

#include "json.hpp"

#include "klein/geom/circle.hpp"

namespace klein::geom {

using Json = nlohmann::ordered_json;

// Complex as [re, im]; infinity as "inf".
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json to_json(const SpherePoint& z);
SpherePoint sphere_point_from_json(const Json& j);

// {"a": [re, im], "b": ..., "c": ..., "d": ...}
Json to_json(const MoebiusMap& m);
MoebiusMap moebius_from_json(const Json& j);

// {"center": [re, im], "radius": r} or {"line": {"p": 0, "q": [re, im], "s": s}}
Json to_json(const GeneralizedCircle& c);
GeneralizedCircle circle_from_json(const Json& j);

}  // namespace klein::geom

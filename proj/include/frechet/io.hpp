#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "frechet/critical_values.hpp"
#include "frechet/curve.hpp"
#include "frechet/semi_frechet.hpp"
#include "frechet/surface.hpp"
#include "frechet/weak_frechet.hpp"

namespace frechet {

using Json = nlohmann::ordered_json;

/// Number, or string holding a decimal or a rational "p/q". Throws InputError naming `field`.
double parse_real(const Json& v, const std::string& field);

/// Reads {"dimension", "param_vertices", "triangles", "image_vertices"}. The surface is
/// not validated; errors name the offending field, e.g. "triangles[3][1]".
Surface surface_from_json(const Json& j);
Json surface_to_json(const Surface& s);

/// Reads {"dimension", "vertices"}.
PolyCurve curve_from_json(const Json& j);
Json curve_to_json(const PolyCurve& c);

/// Parses text, reporting syntax errors with line and column.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);

Surface load_surface(const std::string& path);
PolyCurve load_curve(const std::string& path);
void save_json(const std::string& path, const Json& j);

Json to_json(const CellId& c);
Json to_json(const CriticalValue& c);
/// {distance, mode, probes, witness_component, ...}
Json to_json(const WeakFrechetResult& r);
Json to_json(const SemiBound& b);

}  // namespace frechet

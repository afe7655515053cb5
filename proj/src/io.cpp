#include "frechet/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "frechet/error.hpp"

namespace frechet {

namespace {

double parse_decimal(const std::string& s, const std::string& field) {
  if (s.empty()) throw InputError(field + ": empty number");
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE) throw InputError(field + ": cannot parse number '" + s + "'");
  return v;
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError("document: expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

const Json& array_of(const Json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array");
  return j;
}

int read_dimension(const Json& j) {
  const Json& d = member(j, "dimension");
  if (!d.is_number_integer() || (d.get<int>() != 2 && d.get<int>() != 3))
    throw InputError("dimension: expected 2 or 3");
  return d.get<int>();
}

Vec3 read_point(const Json& p, int dimension, const std::string& field) {
  array_of(p, field);
  if (static_cast<int>(p.size()) != dimension)
    throw InputError(field + ": expected " + std::to_string(dimension) + " coordinates");
  Vec3 v{0, 0, 0};
  v.x = parse_real(p[0], field + "[0]");
  v.y = parse_real(p[1], field + "[1]");
  if (dimension == 3) v.z = parse_real(p[2], field + "[2]");
  return v;
}

Json point_json(const Vec3& v, int dimension) {
  Json p = Json::array({v.x, v.y});
  if (dimension == 3) p.push_back(v.z);
  return p;
}

}  // namespace

double parse_real(const Json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw InputError(field + ": expected a number or a \"p/q\" string");
  const std::string s = v.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_decimal(s, field);
  const double p = parse_decimal(s.substr(0, slash), field);
  const double q = parse_decimal(s.substr(slash + 1), field);
  if (q == 0.0) throw InputError(field + ": zero denominator in '" + s + "'");
  return p / q;
}

Surface surface_from_json(const Json& j) {
  const int dimension = read_dimension(j);
  const Json& pv = array_of(member(j, "param_vertices"), "param_vertices");
  const Json& tr = array_of(member(j, "triangles"), "triangles");
  const Json& iv = array_of(member(j, "image_vertices"), "image_vertices");
  if (pv.size() != iv.size())
    throw InputError("image_vertices: expected " + std::to_string(pv.size()) + " entries (one per param vertex), got " +
                     std::to_string(iv.size()));
  std::vector<Vec2> params;
  std::vector<std::array<std::string, 2>> text;
  for (std::size_t i = 0; i < pv.size(); ++i) {
    const std::string field = "param_vertices[" + std::to_string(i) + "]";
    const Json& p = array_of(pv[i], field);
    if (p.size() != 2) throw InputError(field + ": expected 2 coordinates");
    params.push_back({parse_real(p[0], field + "[0]"), parse_real(p[1], field + "[1]")});
    std::array<std::string, 2> t;
    for (int c = 0; c < 2; ++c) t[c] = p[c].is_string() ? p[c].get<std::string>() : p[c].dump();
    text.push_back(t);
  }
  std::vector<std::array<int, 3>> tris;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const std::string field = "triangles[" + std::to_string(i) + "]";
    const Json& t = array_of(tr[i], field);
    if (t.size() != 3) throw InputError(field + ": expected 3 vertex indices");
    std::array<int, 3> idx{};
    for (int c = 0; c < 3; ++c) {
      if (!t[c].is_number_integer()) throw InputError(field + "[" + std::to_string(c) + "]: expected an integer");
      const long long k = t[c].get<long long>();
      if (k < 0 || k >= static_cast<long long>(pv.size()))
        throw InputError(field + "[" + std::to_string(c) + "]: vertex index " + std::to_string(k) + " out of range");
      idx[c] = static_cast<int>(k);
    }
    tris.push_back(idx);
  }
  std::vector<Vec3> image;
  for (std::size_t i = 0; i < iv.size(); ++i)
    image.push_back(read_point(iv[i], dimension, "image_vertices[" + std::to_string(i) + "]"));
  Surface s = make_surface(dimension, std::move(params), std::move(tris), std::move(image));
  s.param.vertex_text = std::move(text);
  return s;
}

Json surface_to_json(const Surface& s) {
  Json j;
  j["dimension"] = s.dimension;
  Json pv = Json::array();
  for (std::size_t i = 0; i < s.param.vertices.size(); ++i) {
    if (i < s.param.vertex_text.size()) {
      Json p = Json::array();
      for (const auto& t : s.param.vertex_text[i]) {
        if (t.find('/') != std::string::npos)
          p.push_back(t);
        else
          p.push_back(parse_decimal(t, "vertex_text"));
      }
      pv.push_back(p);
    } else {
      pv.push_back(Json::array({s.param.vertices[i].x, s.param.vertices[i].y}));
    }
  }
  j["param_vertices"] = pv;
  Json tr = Json::array();
  for (const auto& t : s.param.triangles) tr.push_back(Json::array({t[0], t[1], t[2]}));
  j["triangles"] = tr;
  Json iv = Json::array();
  for (const auto& v : s.image) iv.push_back(point_json(v, s.dimension));
  j["image_vertices"] = iv;
  return j;
}

PolyCurve curve_from_json(const Json& j) {
  PolyCurve c;
  c.dimension = read_dimension(j);
  const Json& vs = array_of(member(j, "vertices"), "vertices");
  for (std::size_t i = 0; i < vs.size(); ++i)
    c.vertices.push_back(read_point(vs[i], c.dimension, "vertices[" + std::to_string(i) + "]"));
  return c;
}

Json curve_to_json(const PolyCurve& c) {
  Json j;
  j["dimension"] = c.dimension;
  Json vs = Json::array();
  for (const auto& v : c.vertices) vs.push_back(point_json(v, c.dimension));
  j["vertices"] = vs;
  return j;
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

Surface load_surface(const std::string& path) {
  try {
    return surface_from_json(read_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + msg);
  }
}

PolyCurve load_curve(const std::string& path) {
  try {
    return curve_from_json(read_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + msg);
  }
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot write file");
  out << j.dump(2) << "\n";
}

Json to_json(const CellId& c) { return Json::array({c.k, c.l}); }

Json to_json(const CriticalValue& c) {
  Json j;
  j["value"] = c.value;
  j["kind"] = to_string(c.kind);
  j["side"] = std::string(1, c.side);
  j["what"] = c.what;
  j["simplices"] = c.simplices;
  Json kinds = Json::array();
  for (CriticalKind k : c.merged_kinds) kinds.push_back(to_string(k));
  j["merged_kinds"] = kinds;
  return j;
}

Json to_json(const WeakFrechetResult& r) {
  Json j;
  j["distance"] = r.distance;
  j["mode"] = to_string(r.mode);
  Json probes = Json::array();
  for (const auto& p : r.probes) probes.push_back(Json{{"eps", p.eps}, {"answer", p.answer}});
  j["probes"] = probes;
  Json wc = Json::array();
  for (const auto& c : r.witness_component) wc.push_back(to_json(c));
  j["witness_component"] = wc;
  j["bracket"] = Json::array({r.bracket_lo, r.bracket_hi});
  j["matched"] = r.matched ? to_json(*r.matched) : Json(nullptr);
  j["c1_count"] = r.c1_count;
  j["c2_count"] = r.c2_count;
  return j;
}

Json to_json(const SemiBound& b) {
  return Json{{"value", b.value}, {"m", b.m}, {"n", b.n}, {"candidate", b.candidate_index}};
}

}  // namespace frechet

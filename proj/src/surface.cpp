#include "frechet/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "frechet/error.hpp"

namespace frechet {

void ParamTriangulation::build_adjacency() {
  std::map<std::pair<int, int>, std::vector<int>> incident;
  for (int t = 0; t < static_cast<int>(triangles.size()); ++t)
    for (int i = 0; i < 3; ++i) {
      const int a = triangles[t][i], b = triangles[t][(i + 1) % 3];
      incident[{std::min(a, b), std::max(a, b)}].push_back(t);
    }
  edges.clear();
  for (auto& [key, tris] : incident) edges.push_back({key.first, key.second, tris});
  triangle_edges.assign(triangles.size(), {-1, -1, -1});
  for (int t = 0; t < static_cast<int>(triangles.size()); ++t)
    for (int i = 0; i < 3; ++i) triangle_edges[t][i] = edge_index(triangles[t][i], triangles[t][(i + 1) % 3]);
}

int ParamTriangulation::edge_index(int a, int b) const {
  const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges.begin(), edges.end(), key,
                             [](const ParamEdge& e, const std::pair<int, int>& k) {
                               return std::pair{e.lo, e.hi} < k;
                             });
  if (it == edges.end() || it->lo != key.first || it->hi != key.second) return -1;
  return static_cast<int>(it - edges.begin());
}

std::vector<int> ParamTriangulation::boundary_cycle() const {
  std::map<int, int> next;
  int count = 0;
  for (const auto& e : edges) {
    if (!e.boundary()) continue;
    const auto& tri = triangles[e.triangles[0]];
    for (int i = 0; i < 3; ++i) {
      const int a = tri[i], b = tri[(i + 1) % 3];
      if (std::min(a, b) == e.lo && std::max(a, b) == e.hi) {
        if (next.count(a)) return {};
        next[a] = b;
      }
    }
    ++count;
  }
  if (next.empty()) return {};
  std::vector<int> cycle;
  int v = next.begin()->first;
  const int start = v;
  do {
    cycle.push_back(v);
    auto it = next.find(v);
    if (it == next.end() || static_cast<int>(cycle.size()) > count) return {};
    v = it->second;
  } while (v != start);
  if (static_cast<int>(cycle.size()) != count) return {};
  return cycle;
}

double ParamTriangulation::signed_area(int t) const {
  const Vec2 a = vertices[triangles[t][0]], b = vertices[triangles[t][1]], c = vertices[triangles[t][2]];
  return 0.5 * cross(b - a, c - a);
}

Triangle3 Surface::image_triangle(int t) const {
  const auto& tri = param.triangles[t];
  return {image[tri[0]], image[tri[1]], image[tri[2]]};
}

Segment3 Surface::image_edge(int e) const { return {image[param.edges[e].lo], image[param.edges[e].hi]}; }

std::string ValidationReport::joined() const {
  std::string out;
  for (const auto& s : issues) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

namespace {

constexpr double kGeomTol = 1e-9;

bool on_square_side(Vec2 a, Vec2 b) {
  auto near = [](double x, double v) { return std::fabs(x - v) <= kGeomTol; };
  return (near(a.x, 0) && near(b.x, 0)) || (near(a.x, 1) && near(b.x, 1)) || (near(a.y, 0) && near(b.y, 0)) ||
         (near(a.y, 1) && near(b.y, 1));
}

// Interiors of two counterclockwise triangles overlap (separating axis test).
bool interiors_overlap(const std::array<Vec2, 3>& p, const std::array<Vec2, 3>& q) {
  for (int side = 0; side < 2; ++side) {
    const auto& t = side == 0 ? p : q;
    for (int i = 0; i < 3; ++i) {
      const Vec2 d = t[(i + 1) % 3] - t[i];
      const Vec2 n{d.y, -d.x};
      double pmin = 1e300, pmax = -1e300, qmin = 1e300, qmax = -1e300;
      for (int k = 0; k < 3; ++k) {
        pmin = std::min(pmin, dot(n, p[k]));
        pmax = std::max(pmax, dot(n, p[k]));
        qmin = std::min(qmin, dot(n, q[k]));
        qmax = std::max(qmax, dot(n, q[k]));
      }
      const double slack = kGeomTol * norm(n);
      if (pmax <= qmin + slack || qmax <= pmin + slack) return false;
    }
  }
  return true;
}

std::string at(const char* what, int i) {
  std::ostringstream os;
  os << what << " at index " << i;
  return os.str();
}

}  // namespace

ValidationReport validate(const Surface& s) {
  ValidationReport r;
  const auto& p = s.param;
  const int nv = static_cast<int>(p.vertices.size());
  if (s.dimension != 2 && s.dimension != 3) r.issues.push_back("dimension must be 2 or 3");
  if (nv < 3) r.issues.push_back("fewer than 3 parameter vertices");
  if (p.triangles.empty()) r.issues.push_back("no triangles");
  if (static_cast<int>(s.image.size()) != nv) r.issues.push_back("image_vertices count differs from param_vertices");
  for (int i = 0; i < nv; ++i) {
    const Vec2 v = p.vertices[i];
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      r.issues.push_back(at("non-finite parameter vertex", i));
    } else if (v.x < -kGeomTol || v.x > 1 + kGeomTol || v.y < -kGeomTol || v.y > 1 + kGeomTol) {
      r.issues.push_back(at("parameter vertex outside [0,1]²", i));
    }
  }
  for (int i = 0; i < static_cast<int>(s.image.size()); ++i) {
    const Vec3 q = s.image[i];
    if (!std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.z))
      r.issues.push_back(at("non-finite image vertex", i));
    else if (s.dimension == 2 && q.z != 0.0)
      r.issues.push_back(at("planar image vertex with nonzero z", i));
  }
  bool indices_ok = true;
  for (int t = 0; t < static_cast<int>(p.triangles.size()); ++t) {
    const auto& tri = p.triangles[t];
    for (int k : tri)
      if (k < 0 || k >= nv) indices_ok = false;
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      r.issues.push_back(at("repeated vertex in triangle", t));
      indices_ok = false;
    }
  }
  if (!indices_ok) {
    r.issues.push_back("triangle vertex index out of range or repeated");
    return r;
  }
  if (!r.ok()) return r;

  ParamTriangulation q = p;
  q.build_adjacency();
  double area = 0.0;
  for (int t = 0; t < static_cast<int>(q.triangles.size()); ++t) {
    const double a = q.signed_area(t);
    if (std::fabs(a) <= 1e-14)
      r.issues.push_back(at("zero-area parameter triangle", t));
    else if (a < 0)
      r.issues.push_back(at("clockwise parameter triangle", t));
    area += std::fabs(a);
  }
  for (int e = 0; e < static_cast<int>(q.edges.size()); ++e) {
    const auto& ed = q.edges[e];
    if (ed.triangles.size() > 2) {
      std::ostringstream os;
      os << "non-manifold edge (" << ed.lo << "," << ed.hi << ")";
      r.issues.push_back(os.str());
    } else if (ed.boundary() && !on_square_side(q.vertices[ed.lo], q.vertices[ed.hi])) {
      std::ostringstream os;
      os << "boundary edge (" << ed.lo << "," << ed.hi << ") not on the unit square boundary";
      r.issues.push_back(os.str());
    }
  }
  for (int t = 0; t < static_cast<int>(q.triangles.size()); ++t) {
    const std::array<Vec2, 3> a{q.vertices[q.triangles[t][0]], q.vertices[q.triangles[t][1]],
                                q.vertices[q.triangles[t][2]]};
    for (int u = t + 1; u < static_cast<int>(q.triangles.size()); ++u) {
      const std::array<Vec2, 3> b{q.vertices[q.triangles[u][0]], q.vertices[q.triangles[u][1]],
                                  q.vertices[q.triangles[u][2]]};
      if (interiors_overlap(a, b)) {
        std::ostringstream os;
        os << "overlapping triangles " << t << " and " << u;
        r.issues.push_back(os.str());
      }
    }
  }
  if (std::fabs(area - 1.0) > 1e-9) r.issues.push_back("union ≠ [0,1]²");
  else if (q.boundary_cycle().empty()) r.issues.push_back("boundary is not a single cycle");
  for (int t = 0; t < static_cast<int>(q.triangles.size()); ++t) {
    const auto& tri = q.triangles[t];
    if (Triangle3{s.image[tri[0]], s.image[tri[1]], s.image[tri[2]]}.is_degenerate())
      r.issues.push_back(at("degenerate image triangle", t));
  }
  std::vector<char> used(nv, 0);
  for (const auto& tri : q.triangles)
    for (int k : tri) used[k] = 1;
  for (int i = 0; i < nv; ++i)
    if (!used[i]) r.issues.push_back(at("unused parameter vertex", i));
  return r;
}

void require_valid(const Surface& s) {
  const auto r = validate(s);
  if (!r.ok()) throw InputError("invalid surface: " + r.joined());
}

Vec3 eval(const Surface& s, Vec2 x) {
  if (!(x.x >= -kGeomTol && x.x <= 1 + kGeomTol && x.y >= -kGeomTol && x.y <= 1 + kGeomTol))
    throw InputError("eval: point outside [0,1]²");
  int best = -1;
  double best_min = -1e300;
  std::array<double, 3> best_bary{};
  for (int t = 0; t < s.triangle_count(); ++t) {
    const auto& tri = s.param.triangles[t];
    const Vec2 a = s.param.vertices[tri[0]], b = s.param.vertices[tri[1]], c = s.param.vertices[tri[2]];
    const double det = cross(b - a, c - a);
    if (det == 0.0) continue;
    const double l1 = cross(x - a, c - a) / det;
    const double l2 = cross(b - a, x - a) / det;
    const double l0 = 1.0 - l1 - l2;
    const double mn = std::min({l0, l1, l2});
    if (mn > best_min) {
      best_min = mn;
      best = t;
      best_bary = {l0, l1, l2};
    }
    if (mn >= 0.0) break;
  }
  if (best < 0 || best_min < -1e-9) throw InputError("eval: point not covered by the triangulation");
  const auto& tri = s.param.triangles[best];
  return best_bary[0] * s.image[tri[0]] + best_bary[1] * s.image[tri[1]] + best_bary[2] * s.image[tri[2]];
}

Surface barycentric_subdivide(const Surface& s) {
  if (s.param.triangle_edges.size() != s.param.triangles.size()) {
    Surface copy = s;
    copy.param.build_adjacency();
    return barycentric_subdivide(copy);
  }
  const auto& p = s.param;
  Surface out;
  out.dimension = s.dimension;
  out.param.vertices = p.vertices;
  out.image = s.image;
  const int ne = static_cast<int>(p.edges.size());
  const int base_mid = static_cast<int>(p.vertices.size());
  for (const auto& e : p.edges) {
    out.param.vertices.push_back(0.5 * (p.vertices[e.lo] + p.vertices[e.hi]));
    out.image.push_back(0.5 * (s.image[e.lo] + s.image[e.hi]));
  }
  const int base_cen = base_mid + ne;
  for (int t = 0; t < static_cast<int>(p.triangles.size()); ++t) {
    const auto& tri = p.triangles[t];
    out.param.vertices.push_back((1.0 / 3.0) * (p.vertices[tri[0]] + p.vertices[tri[1]] + p.vertices[tri[2]]));
    out.image.push_back((1.0 / 3.0) * (s.image[tri[0]] + s.image[tri[1]] + s.image[tri[2]]));
  }
  for (int t = 0; t < static_cast<int>(p.triangles.size()); ++t) {
    const auto& tri = p.triangles[t];
    const int g = base_cen + t;
    for (int i = 0; i < 3; ++i) {
      const int a = tri[i], b = tri[(i + 1) % 3];
      const int m = base_mid + p.triangle_edges[t][i];
      out.param.triangles.push_back({a, m, g});
      out.param.triangles.push_back({m, b, g});
    }
  }
  if (!p.vertex_text.empty()) out.param.vertex_text = p.vertex_text;
  out.param.build_adjacency();
  return out;
}

Surface barycentric_subdivide(const Surface& s, int times) {
  Surface out = s;
  for (int i = 0; i < times; ++i) out = barycentric_subdivide(out);
  return out;
}

double mesh_size(const ParamTriangulation& t) {
  double m = 0.0;
  for (const auto& tri : t.triangles)
    for (int i = 0; i < 3; ++i) m = std::max(m, norm(t.vertices[tri[i]] - t.vertices[tri[(i + 1) % 3]]));
  return m;
}

double lipschitz_constant(const Surface& s) {
  double best = 0.0;
  for (const auto& tri : s.param.triangles) {
    const Vec2 p0 = s.param.vertices[tri[0]];
    const Vec2 e1 = s.param.vertices[tri[1]] - p0, e2 = s.param.vertices[tri[2]] - p0;
    const Vec3 q1 = s.image[tri[1]] - s.image[tri[0]], q2 = s.image[tri[2]] - s.image[tri[0]];
    const double det = cross(e1, e2);
    if (det == 0.0) continue;
    // A = Q P^{-1}; columns of A are the images of the unit vectors.
    const Vec3 ax = (1.0 / det) * (e2.y * q1 - e1.y * q2);
    const Vec3 ay = (1.0 / det) * (-e2.x * q1 + e1.x * q2);
    const double g11 = dot(ax, ax), g12 = dot(ax, ay), g22 = dot(ay, ay);
    const double tr = g11 + g22;
    const double disc = std::sqrt(std::max(0.0, 0.25 * (g11 - g22) * (g11 - g22) + g12 * g12));
    best = std::max(best, std::sqrt(0.5 * tr + disc));
  }
  return best;
}

Surface make_surface(int dimension, std::vector<Vec2> param_vertices, std::vector<std::array<int, 3>> triangles,
                     std::vector<Vec3> image) {
  Surface s;
  s.dimension = dimension;
  s.param.vertices = std::move(param_vertices);
  s.param.triangles = std::move(triangles);
  s.image = std::move(image);
  const int nv = static_cast<int>(s.param.vertices.size());
  for (const auto& tri : s.param.triangles)
    for (int k : tri)
      if (k < 0 || k >= nv) throw InputError("triangle vertex index out of range");
  s.param.build_adjacency();
  return s;
}

std::vector<Triangle3> image_triangles(const Surface& s) {
  std::vector<Triangle3> out;
  out.reserve(s.param.triangles.size());
  for (int t = 0; t < s.triangle_count(); ++t) out.push_back(s.image_triangle(t));
  return out;
}

std::vector<Segment3> image_edges(const Surface& s) {
  std::vector<Segment3> out;
  out.reserve(s.param.edges.size());
  for (int e = 0; e < s.edge_count(); ++e) out.push_back(s.image_edge(e));
  return out;
}

}  // namespace frechet

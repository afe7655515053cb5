#include "frechet/conic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "frechet/polynomial.hpp"

namespace frechet {

Plane2Frame Plane2Frame::of_triangle(const Triangle3& t) {
  if (t.is_degenerate()) throw InputError("plane frame of degenerate triangle");
  const Vec3 u = normalized(t.b - t.a);
  const Vec3 w = t.c - t.a;
  const Vec3 v = normalized(w - dot(w, u) * u);
  return {t.a, u, v};
}

Plane2Frame Plane2Frame::rotated(double angle) const {
  const double cs = std::cos(angle), sn = std::sin(angle);
  return {origin, cs * u + sn * v, -sn * u + cs * v};
}

void Box2::add(Vec2 p) {
  if (empty()) {
    *this = {p.x, p.x, p.y, p.y};
    return;
  }
  xmin = std::min(xmin, p.x);
  xmax = std::max(xmax, p.x);
  ymin = std::min(ymin, p.y);
  ymax = std::max(ymax, p.y);
}

double Conic::scale() const {
  return std::max({std::fabs(a), std::fabs(b), std::fabs(c), std::fabs(d), std::fabs(e), std::fabs(f)});
}

double Conic::quadratic_scale() const { return std::max({std::fabs(a), std::fabs(b), std::fabs(c)}); }

Conic Conic::normalized() const {
  const double s = scale();
  if (s == 0.0) return *this;
  const double k = 1.0 / s;
  return {a * k, b * k, c * k, d * k, e * k, f * k};
}

bool ConicArc::in_range(Vec2 p, double slack) const {
  for (const auto& h : clip)
    if (h.value(p) > slack) return false;
  return true;
}

namespace {

// Quadratic form (P - p)^T M (P - p) over P = origin + s u + t v, M given as a bilinear form.
template <class Bilinear>
Conic quadratic_in_plane(const Plane2Frame& pl, Vec3 p, Bilinear m) {
  const Vec3 w0 = pl.origin - p;
  return {m(pl.u, pl.u), 2.0 * m(pl.u, pl.v), m(pl.v, pl.v), 2.0 * m(w0, pl.u), 2.0 * m(w0, pl.v), m(w0, w0)};
}

// 3D half-space (x - p) . q <= 0 restricted to the plane. Returns false if the
// restriction is constant; `always` then tells whether it holds everywhere.
bool half_space_in_plane(const Plane2Frame& pl, Vec3 p, Vec3 q, HalfPlane& out, bool& always) {
  const double qn = norm(q);
  const Vec2 n{dot(pl.u, q), dot(pl.v, q)};
  const double off = dot(pl.origin - p, q);
  const double nn = norm(n);
  if (nn <= 1e-12 * qn) {
    always = off <= kClipSlack * qn;
    return false;
  }
  out = {{n.x / nn, n.y / nn}, off / nn};
  return true;
}

struct FeatureGeometry {
  Vec3 corner[3];
  Vec3 edge_dir[3];  // unit, corner i -> corner i+1
  double edge_len[3];
  Vec3 edge_out[3];  // unit outward normal within the triangle plane
  Vec3 normal;       // unit
};

FeatureGeometry feature_geometry(const Triangle3& t) {
  FeatureGeometry g;
  g.corner[0] = t.a;
  g.corner[1] = t.b;
  g.corner[2] = t.c;
  g.normal = normalized(t.normal());
  for (int i = 0; i < 3; ++i) {
    const Vec3 a = g.corner[i], b = g.corner[(i + 1) % 3], opp = g.corner[(i + 2) % 3];
    g.edge_len[i] = distance(a, b);
    g.edge_dir[i] = normalized(b - a);
    Vec3 out = normalized(cross(g.edge_dir[i], g.normal));
    if (dot(out, opp - a) > 0.0) out = -out;
    g.edge_out[i] = out;
  }
  return g;
}

// Nearest-feature regions as lists of 3D half-spaces (point, normal): (x - p) . q <= 0.
std::vector<std::pair<Vec3, Vec3>> region_half_spaces(const FeatureGeometry& g, Feature f) {
  std::vector<std::pair<Vec3, Vec3>> hs;
  const int i = f.index;
  switch (f.kind) {
    case FeatureKind::Vertex: {
      const Vec3 a = g.corner[i];
      hs.push_back({a, g.corner[(i + 1) % 3] - a});
      hs.push_back({a, g.corner[(i + 2) % 3] - a});
      break;
    }
    case FeatureKind::Edge: {
      const Vec3 a = g.corner[i], b = g.corner[(i + 1) % 3];
      hs.push_back({a, -g.edge_dir[i]});
      hs.push_back({b, g.edge_dir[i]});
      hs.push_back({a, -g.edge_out[i]});
      break;
    }
    case FeatureKind::Face:
      for (int k = 0; k < 3; ++k) hs.push_back({g.corner[k], g.edge_out[k]});
      break;
  }
  return hs;
}

bool clip_region_in_plane(const Plane2Frame& pl, const std::vector<std::pair<Vec3, Vec3>>& hs,
                          std::vector<HalfPlane>& out) {
  out.clear();
  for (const auto& [p, q] : hs) {
    HalfPlane h;
    bool always = true;
    if (half_space_in_plane(pl, p, q, h, always))
      out.push_back(h);
    else if (!always)
      return false;
  }
  return true;
}

Conic feature_squared_distance(const Plane2Frame& pl, const FeatureGeometry& g, Feature f) {
  switch (f.kind) {
    case FeatureKind::Vertex:
      return quadratic_in_plane(pl, g.corner[f.index], [](Vec3 x, Vec3 y) { return dot(x, y); });
    case FeatureKind::Edge: {
      const Vec3 d = g.edge_dir[f.index];
      return quadratic_in_plane(pl, g.corner[f.index],
                                [d](Vec3 x, Vec3 y) { return dot(x, y) - dot(x, d) * dot(y, d); });
    }
    case FeatureKind::Face: {
      const Vec3 n = g.normal;
      return quadratic_in_plane(pl, g.corner[0], [n](Vec3 x, Vec3 y) { return dot(x, n) * dot(y, n); });
    }
  }
  return {};
}

constexpr std::array<Feature, 7> kFeatures = {
    Feature{FeatureKind::Vertex, 0}, Feature{FeatureKind::Vertex, 1}, Feature{FeatureKind::Vertex, 2},
    Feature{FeatureKind::Edge, 0},   Feature{FeatureKind::Edge, 1},   Feature{FeatureKind::Edge, 2},
    Feature{FeatureKind::Face, 0}};

// Parameter range [lo, hi] of the line p + lambda dir inside all half-planes.
bool line_range(const std::vector<HalfPlane>& clip, Vec2 p, Vec2 dir, double& lo, double& hi) {
  lo = -std::numeric_limits<double>::infinity();
  hi = std::numeric_limits<double>::infinity();
  for (const auto& h : clip) {
    const double k = dot(h.n, dir);
    const double v = h.value(p);
    if (std::fabs(k) < 1e-14) {
      if (v > kClipSlack) return false;
      continue;
    }
    const double lam = -v / k;
    if (k > 0)
      hi = std::min(hi, lam);
    else
      lo = std::max(lo, lam);
  }
  return lo <= hi + kClipSlack;
}

// Bounding box of the full ellipse, or false when `q` is not a real ellipse.
bool ellipse_box(const Conic& q, Box2& box) {
  const double det = q.a * q.c - 0.25 * q.b * q.b;
  if (det <= 1e-14 * q.quadratic_scale() * q.quadratic_scale()) return false;
  const double cx = (0.25 * q.b * q.e - 0.5 * q.c * q.d) / det;
  const double cy = (0.25 * q.b * q.d - 0.5 * q.a * q.e) / det;
  double fc = q({cx, cy});
  if (q.a < 0) fc = -fc;  // orient so the quadratic form is positive definite
  if (fc >= 0.0) return false;
  const double hx = std::sqrt(-fc * std::fabs(q.c) / det);
  const double hy = std::sqrt(-fc * std::fabs(q.a) / det);
  box = {cx - hx, cx + hx, cy - hy, cy + hy};
  return true;
}

Box2 universal_box(const Triangle3& t, const Plane2Frame& pl, double eps) {
  Box2 b;
  b.add(pl.project(t.a));
  b.add(pl.project(t.b));
  b.add(pl.project(t.c));
  return b.expanded(eps * (1.0 + 1e-9) + 1e-12);
}

void finish_line_arc(ConicArc& arc, const Box2& fallback, std::vector<ConicArc>& out) {
  const Vec2 n{arc.conic.d, arc.conic.e};
  const double nn = norm(n);
  if (nn == 0.0) return;
  const Vec2 p = (-arc.conic.f / (nn * nn)) * n;
  const Vec2 dir{-n.y / nn, n.x / nn};
  double lo, hi;
  if (!line_range(arc.clip, p, dir, lo, hi)) return;
  Box2 box;
  if (std::isfinite(lo) && std::isfinite(hi)) {
    box.add(p + lo * dir);
    box.add(p + hi * dir);
    arc.bounds = box.expanded(kClipSlack).intersect(fallback);
  } else {
    arc.bounds = fallback;
  }
  arc.kind = ArcKind::Segment;
  out.push_back(arc);
}

}  // namespace

const std::array<Feature, 7>& triangle_features() { return kFeatures; }

std::vector<HalfSpace3> feature_region(const Triangle3& t, Feature f) {
  std::vector<HalfSpace3> out;
  for (const auto& [p, q] : region_half_spaces(feature_geometry(t), f)) out.push_back({p, q});
  return out;
}

double feature_support_distance2(const Triangle3& t, Feature f, Vec3 x) {
  const FeatureGeometry g = feature_geometry(t);
  switch (f.kind) {
    case FeatureKind::Vertex:
      return norm2(x - g.corner[f.index]);
    case FeatureKind::Edge: {
      const Vec3 w = x - g.corner[f.index];
      const double along = dot(w, g.edge_dir[f.index]);
      return std::max(0.0, norm2(w) - along * along);
    }
    case FeatureKind::Face: {
      const double h = dot(x - g.corner[0], g.normal);
      return h * h;
    }
  }
  return 0.0;
}

std::array<FeatureField, 7> feature_fields(const Triangle3& t, const Plane2Frame& plane) {
  const FeatureGeometry g = feature_geometry(t);
  std::array<FeatureField, 7> out;
  for (std::size_t i = 0; i < kFeatures.size(); ++i) {
    out[i].feature = kFeatures[i];
    out[i].squared_distance = feature_squared_distance(plane, g, kFeatures[i]);
    out[i].region_empty = !clip_region_in_plane(plane, region_half_spaces(g, kFeatures[i]), out[i].region);
  }
  return out;
}

NeighborhoodSection eps_neighborhood_plane_boundary(const Triangle3& t, double eps, const Plane2Frame& plane,
                                                    const Tolerance& tol) {
  if (!(eps > 0.0)) throw InputError("eps_neighborhood_plane_boundary: eps must be positive");
  if (t.is_degenerate()) throw InputError("degenerate triangle");
  NeighborhoodSection out;
  const FeatureGeometry g = feature_geometry(t);
  const Vec3 pn = plane.normal();
  double h[3];
  for (int i = 0; i < 3; ++i) h[i] = plane.height(g.corner[i]);
  double plane_dist = 0.0;
  if ((h[0] > 0 && h[1] > 0 && h[2] > 0) || (h[0] < 0 && h[1] < 0 && h[2] < 0))
    plane_dist = std::min({std::fabs(h[0]), std::fabs(h[1]), std::fabs(h[2])});
  switch (cmp(plane_dist, eps, tol)) {
    case Ordering::Greater:
      out.status = RegionStatus::Empty;
      return out;
    case Ordering::Equal:
      out.status = RegionStatus::Degenerate;
      break;
    case Ordering::Less:
      out.status = RegionStatus::Regular;
      break;
  }
  const Box2 fallback = universal_box(t, plane, eps);
  const double eps2 = eps * eps;

  for (const Feature f : kFeatures) {
    ConicArc arc;
    arc.source = f;
    if (!clip_region_in_plane(plane, region_half_spaces(g, f), arc.clip)) continue;
    if (f.kind == FeatureKind::Vertex) {
      const double r2 = eps2 - h[f.index] * h[f.index];
      if (r2 <= 1e-24 + 1e-12 * eps2) continue;
      arc.kind = ArcKind::CircleArc;
      arc.conic = feature_squared_distance(plane, g, f);
      arc.conic.f -= eps2;
      const Vec2 c = plane.project(g.corner[f.index]);
      const double r = std::sqrt(r2);
      arc.bounds = Box2{c.x - r, c.x + r, c.y - r, c.y + r}.intersect(fallback);
      out.arcs.push_back(arc);
    } else if (f.kind == FeatureKind::Edge) {
      const Vec3 d = g.edge_dir[f.index];
      const double sn = std::fabs(dot(d, pn));
      const double ha = h[f.index];
      if (sn < 1e-9) {
        const double r2 = eps2 - ha * ha;
        double r = 0.0;
        if (r2 > 1e-24 + 1e-12 * eps2)
          r = std::sqrt(r2);
        else if (!tol_equal(std::fabs(ha), eps, tol))
          continue;
        const Vec2 a2 = plane.project(g.corner[f.index]);
        const Vec2 d2{dot(d, plane.u), dot(d, plane.v)};
        const double dn = norm(d2);
        const Vec2 perp{-d2.y / dn, d2.x / dn};
        for (double side : {1.0, -1.0}) {
          ConicArc line = arc;
          line.conic = {0, 0, 0, perp.x, perp.y, -dot(perp, a2) - side * r};
          finish_line_arc(line, fallback, out.arcs);
          if (r == 0.0) break;  // tangent cylinder: the edge line itself
        }
      } else {
        arc.conic = feature_squared_distance(plane, g, f);
        arc.conic.f -= eps2;
        Box2 box;
        if (!ellipse_box(arc.conic, box)) continue;  // cylinder misses the plane
        arc.kind = sn > 1.0 - 1e-12 ? ArcKind::CircleArc : ArcKind::EllipseArc;
        arc.bounds = box.intersect(fallback);
        out.arcs.push_back(arc);
      }
    } else {
      const Vec3 n = g.normal;
      const Vec2 nn{dot(n, plane.u), dot(n, plane.v)};
      if (norm(nn) < 1e-12) continue;  // parallel planes: face region is interior or empty
      const double base = dot(plane.origin - g.corner[0], n);
      for (double side : {1.0, -1.0}) {
        ConicArc line = arc;
        line.conic = {0, 0, 0, nn.x, nn.y, base - side * eps};
        finish_line_arc(line, fallback, out.arcs);
      }
    }
  }
  return out;
}

bool section_contains(const NeighborhoodSection& s, Vec2 p) {
  std::vector<double> ys;
  for (const auto& arc : s.arcs) {
    if (p.x < arc.bounds.xmin || p.x > arc.bounds.xmax) continue;
    for (double y : arc_y_at(arc, p.x))
      if (y > p.y) ys.push_back(y);
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end(), [](double a, double b) { return std::fabs(a - b) <= 1e-10; }),
           ys.end());
  return ys.size() % 2 == 1;
}

std::vector<Vec2> conic_line_intersections(const Conic& q, Vec2 p, Vec2 dir, double lo, double hi) {
  const double a2 = q.a * dir.x * dir.x + q.b * dir.x * dir.y + q.c * dir.y * dir.y;
  const double a1 = dot(q.gradient(p), dir);
  const double a0 = q(p);
  std::vector<Vec2> out;
  const double slack = 1e-12 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
  for (double lam : solve_quadratic(a2, a1, a0))
    if (lam >= lo - slack && lam <= hi + slack) out.push_back(p + lam * dir);
  return out;
}

namespace {

struct Poly4 {
  std::array<double, 5> c{};
};

Poly4 mul(const std::array<double, 3>& x, const std::array<double, 3>& y) {
  Poly4 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.c[i + j] += x[i] * y[j];
  return r;
}

Conic rotate_conic(const Conic& q, double cs, double sn) {
  // x = cs X - sn Y, y = sn X + cs Y
  Conic r;
  r.a = q.a * cs * cs + q.b * cs * sn + q.c * sn * sn;
  r.b = -2 * q.a * cs * sn + q.b * (cs * cs - sn * sn) + 2 * q.c * sn * cs;
  r.c = q.a * sn * sn - q.b * sn * cs + q.c * cs * cs;
  r.d = q.d * cs + q.e * sn;
  r.e = -q.d * sn + q.e * cs;
  r.f = q.f;
  return r;
}

bool identical(const Conic& p, const Conic& q) {
  const Conic a = p.normalized(), b = q.normalized();
  const double s1 = std::max({std::fabs(a.a - b.a), std::fabs(a.b - b.b), std::fabs(a.c - b.c), std::fabs(a.d - b.d),
                              std::fabs(a.e - b.e), std::fabs(a.f - b.f)});
  const double s2 = std::max({std::fabs(a.a + b.a), std::fabs(a.b + b.b), std::fabs(a.c + b.c), std::fabs(a.d + b.d),
                              std::fabs(a.e + b.e), std::fabs(a.f + b.f)});
  return std::min(s1, s2) <= 1e-10;
}

bool polish(const Conic& q1, const Conic& q2, Vec2& p) {
  for (int it = 0; it < 8; ++it) {
    const double r1 = q1(p), r2 = q2(p);
    const Vec2 g1 = q1.gradient(p), g2 = q2.gradient(p);
    const double det = g1.x * g2.y - g1.y * g2.x;
    const double gs = std::max(norm(g1), 1e-300) * std::max(norm(g2), 1e-300);
    if (std::fabs(det) <= 1e-10 * gs) return false;
    const Vec2 step{(r1 * g2.y - r2 * g1.y) / det, (g1.x * r2 - g2.x * r1) / det};
    p = p - step;
    if (norm(step) <= 1e-16 * (1.0 + norm(p))) break;
  }
  return true;
}

double residual(const Conic& q1, const Conic& q2, Vec2 p) {
  const double s = 1.0 + dot(p, p);
  return std::max(std::fabs(q1(p)), std::fabs(q2(p))) / s;
}

void push_unique(std::vector<Vec2>& pts, Vec2 p) {
  for (const auto& x : pts)
    if (norm(x - p) <= 1e-9 * (1.0 + norm(p))) return;
  pts.push_back(p);
}

// line {p + lambda dir} from a linear conic; lambda range covering the window
void linear_to_line(const Conic& q, const Box2& w, Vec2& p, Vec2& dir, double& lo, double& hi) {
  const Vec2 n{q.d, q.e};
  const double nn = norm(n);
  p = (-q.f / (nn * nn)) * n;
  dir = {-n.y / nn, n.x / nn};
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (Vec2 c : {Vec2{w.xmin, w.ymin}, Vec2{w.xmin, w.ymax}, Vec2{w.xmax, w.ymin}, Vec2{w.xmax, w.ymax}}) {
    const double lam = dot(c - p, dir);
    lo = std::min(lo, lam);
    hi = std::max(hi, lam);
  }
}

}  // namespace

std::vector<Vec2> conic_intersections(const Conic& q1_in, const Conic& q2_in, const Box2& window) {
  std::vector<Vec2> out;
  if (window.empty()) return out;
  const Conic q1 = q1_in.normalized(), q2 = q2_in.normalized();
  if (q1.scale() == 0.0 || q2.scale() == 0.0) throw OverlappingArcs();
  if (identical(q1, q2)) throw OverlappingArcs();
  const double wslack = 1e-9 * (1.0 + std::max({std::fabs(window.xmin), std::fabs(window.xmax),
                                                std::fabs(window.ymin), std::fabs(window.ymax)}));
  const bool lin1 = q1.is_linear(), lin2 = q2.is_linear();
  if (lin1 && lin2) {
    const double det = q1.d * q2.e - q1.e * q2.d;
    if (std::fabs(det) <= 1e-14) return out;
    const Vec2 p{(q1.e * q2.f - q2.e * q1.f) / det, (q2.d * q1.f - q1.d * q2.f) / det};
    if (window.contains(p, wslack)) out.push_back(p);
    return out;
  }
  if (lin1 || lin2) {
    const Conic& line = lin1 ? q1 : q2;
    const Conic& other = lin1 ? q2 : q1;
    if (std::hypot(line.d, line.e) == 0.0) return out;
    Vec2 p, dir;
    double lo, hi;
    linear_to_line(line, window, p, dir, lo, hi);
    for (Vec2 x : conic_line_intersections(other, p, dir, lo, hi))
      if (window.contains(x, wslack)) push_unique(out, x);
    return out;
  }

  // Rotate so both conics have a substantial y^2 term, then eliminate y.
  static const double kAngles[] = {0.0, 0.3711, 1.1339, 2.0573, 2.7717, 0.7854};
  double best_angle = 0.0, best_score = -1.0;
  for (double ang : kAngles) {
    const double cs = std::cos(ang), sn = std::sin(ang);
    const Conic r1 = rotate_conic(q1, cs, sn), r2 = rotate_conic(q2, cs, sn);
    const double score =
        std::min(std::fabs(r1.c) / r1.quadratic_scale(), std::fabs(r2.c) / r2.quadratic_scale());
    if (score > best_score + 1e-3) {
      best_score = score;
      best_angle = ang;
    }
  }
  const double cs = std::cos(best_angle), sn = std::sin(best_angle);
  const Conic r1 = rotate_conic(q1, cs, sn), r2 = rotate_conic(q2, cs, sn);
  // window in rotated coordinates: X = cs x + sn y
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  for (Vec2 c : {Vec2{window.xmin, window.ymin}, Vec2{window.xmin, window.ymax}, Vec2{window.xmax, window.ymin},
                 Vec2{window.xmax, window.ymax}}) {
    const double X = cs * c.x + sn * c.y;
    xlo = std::min(xlo, X);
    xhi = std::max(xhi, X);
  }
  xlo -= wslack;
  xhi += wslack;
  const double a2 = r1.c, b2 = r2.c;
  const std::array<double, 3> a1{r1.e, r1.b, 0.0}, a0{r1.f, r1.d, r1.a};
  const std::array<double, 3> b1{r2.e, r2.b, 0.0}, b0{r2.f, r2.d, r2.a};
  std::array<double, 3> u{}, v{};
  for (int i = 0; i < 3; ++i) {
    u[i] = a2 * b0[i] - b2 * a0[i];
    v[i] = a2 * b1[i] - b2 * a1[i];
  }
  const Poly4 uu = mul(u, u), w1 = mul(a1, b0), w2 = mul(a0, b1);
  std::array<double, 3> wdiff{};
  // a1 b0 - a0 b1 has degree <= 2 (a1, b1 linear; a0, b0 quadratic -> degree 3 in general)
  Poly4 w = w1;
  for (int i = 0; i < 5; ++i) w.c[i] -= w2.c[i];
  Poly4 res{};
  for (int i = 0; i < 5; ++i) res.c[i] = uu.c[i];
  // subtract v * w (v degree <= 1, w degree <= 3)
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j + i < 5; ++j) res.c[i + j] -= v[i] * w.c[j];
  (void)wdiff;
  double rs = 0.0;
  for (double c : res.c) rs = std::max(rs, std::fabs(c));
  if (rs <= 1e-13) throw OverlappingArcs();
  const Polynomial poly(std::span<const double>(res.c.data(), res.c.size()));
  std::vector<double> roots;
  try {
    roots = real_roots(poly, xlo, xhi, Tolerance{1e-12, 1e-14});
  } catch (const NumericError&) {
    throw OverlappingArcs();
  }
  for (double X : roots) {
    std::vector<double> ys = solve_quadratic(r1.c, r1.b * X + r1.e, r1.a * X * X + r1.d * X + r1.f);
    for (double y : solve_quadratic(r2.c, r2.b * X + r2.e, r2.a * X * X + r2.d * X + r2.f)) ys.push_back(y);
    for (double Y : ys) {
      Vec2 p{X, Y};
      if (residual(r1, r2, p) > 1e-5) continue;
      Vec2 q = p;
      if (polish(r1, r2, q) && residual(r1, r2, q) <= residual(r1, r2, p)) p = q;
      if (residual(r1, r2, p) > 1e-8) continue;
      const Vec2 back{cs * p.x - sn * p.y, sn * p.x + cs * p.y};
      if (window.contains(back, wslack)) push_unique(out, back);
    }
  }
  return out;
}

std::vector<Vec2> arc_pair_intersections(const ConicArc& a, const ConicArc& b) {
  const Box2 w = a.bounds.intersect(b.bounds).expanded(kClipSlack);
  std::vector<Vec2> out;
  if (w.empty()) return out;
  for (Vec2 p : conic_intersections(a.conic, b.conic, w))
    if (a.in_range(p, kClipSlack) && b.in_range(p, kClipSlack)) out.push_back(p);
  return out;
}

std::vector<Vec2> arc_endpoints(const ConicArc& arc) {
  std::vector<Vec2> out;
  const Box2 w = arc.bounds.expanded(kClipSlack);
  for (std::size_t i = 0; i < arc.clip.size(); ++i) {
    const HalfPlane& h = arc.clip[i];
    const Vec2 p = -h.off * h.n;
    const Vec2 dir{-h.n.y, h.n.x};
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (Vec2 c : {Vec2{w.xmin, w.ymin}, Vec2{w.xmin, w.ymax}, Vec2{w.xmax, w.ymin}, Vec2{w.xmax, w.ymax}}) {
      const double lam = dot(c - p, dir);
      lo = std::min(lo, lam);
      hi = std::max(hi, lam);
    }
    for (Vec2 x : conic_line_intersections(arc.conic, p, dir, lo, hi)) {
      bool ok = w.contains(x);
      for (std::size_t j = 0; ok && j < arc.clip.size(); ++j)
        if (j != i && arc.clip[j].value(x) > kClipSlack) ok = false;
      if (ok) push_unique(out, x);
    }
  }
  return out;
}

std::vector<Vec2> arc_vertical_extremes(const ConicArc& arc) {
  std::vector<Vec2> out;
  const Conic& q = arc.conic;
  if (q.is_linear()) return out;
  // dQ/dy = b x + 2 c y + e = 0
  const Vec2 n{q.b, 2 * q.c};
  const double nn = norm(n);
  if (nn <= 1e-14 * q.scale()) return out;
  const Vec2 p = (-q.e / (nn * nn)) * n;
  const Vec2 dir{-n.y / nn, n.x / nn};
  const Box2 w = arc.bounds.expanded(kClipSlack);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (Vec2 c : {Vec2{w.xmin, w.ymin}, Vec2{w.xmin, w.ymax}, Vec2{w.xmax, w.ymin}, Vec2{w.xmax, w.ymax}}) {
    const double lam = dot(c - p, dir);
    lo = std::min(lo, lam);
    hi = std::max(hi, lam);
  }
  for (Vec2 x : conic_line_intersections(q, p, dir, lo, hi))
    if (arc.in_range(x, kClipSlack)) push_unique(out, x);
  return out;
}

std::vector<double> arc_y_at(const ConicArc& arc, double x) {
  std::vector<double> out;
  const Conic& q = arc.conic;
  const double a2 = q.c, a1 = q.b * x + q.e, a0 = q.a * x * x + q.d * x + q.f;
  if (std::max(std::fabs(a2), std::fabs(a1)) <= 1e-14 * q.scale()) return out;
  for (double y : solve_quadratic(a2, a1, a0))
    if (arc.in_range({x, y}, kClipSlack)) out.push_back(y);
  return out;
}

std::vector<Vec2> sample_arc(const ConicArc& arc, int n) {
  std::vector<Vec2> out;
  if (n <= 0) return out;
  const Conic& q = arc.conic;
  if (q.is_linear()) {
    const Vec2 nv{q.d, q.e};
    const double nn = norm(nv);
    const Vec2 p = (-q.f / (nn * nn)) * nv;
    const Vec2 dir{-nv.y / nn, nv.x / nn};
    double lo, hi;
    if (!line_range(arc.clip, p, dir, lo, hi)) return out;
    const Box2& w = arc.bounds;
    double blo = std::numeric_limits<double>::infinity(), bhi = -blo;
    for (Vec2 c : {Vec2{w.xmin, w.ymin}, Vec2{w.xmin, w.ymax}, Vec2{w.xmax, w.ymin}, Vec2{w.xmax, w.ymax}}) {
      const double lam = dot(c - p, dir);
      blo = std::min(blo, lam);
      bhi = std::max(bhi, lam);
    }
    lo = std::max(lo, blo);
    hi = std::min(hi, bhi);
    for (int i = 0; i < n; ++i) {
      const double lam = n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1);
      out.push_back(p + lam * dir);
    }
    return out;
  }
  // ellipse: centre and principal axes of the quadratic form
  const double det = q.a * q.c - 0.25 * q.b * q.b;
  if (det <= 0.0) return out;
  const Vec2 c{(0.25 * q.b * q.e - 0.5 * q.c * q.d) / det, (0.25 * q.b * q.d - 0.5 * q.a * q.e) / det};
  double fc = q(c);
  double A = q.a, B = 0.5 * q.b, C = q.c;
  if (A < 0) {
    A = -A;
    B = -B;
    C = -C;
    fc = -fc;
  }
  if (fc >= 0.0) return out;
  const double tr = A + C, dd = std::sqrt(std::max(0.0, 0.25 * (A - C) * (A - C) + B * B));
  const double l1 = 0.5 * tr + dd, l2 = 0.5 * tr - dd;
  Vec2 e1 = std::fabs(B) > 1e-300 ? Vec2{l1 - C, B} : (A >= C ? Vec2{1, 0} : Vec2{0, 1});
  e1 = (1.0 / norm(e1)) * e1;
  const Vec2 e2{-e1.y, e1.x};
  const double r1 = std::sqrt(-fc / l1), r2 = std::sqrt(-fc / l2);
  const int dense = std::max(4 * n, 64);
  for (int i = 0; i < dense; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / dense;
    const Vec2 p = c + (r1 * std::cos(phi)) * e1 + (r2 * std::sin(phi)) * e2;
    if (arc.in_range(p, kClipSlack)) out.push_back(p);
  }
  if (static_cast<int>(out.size()) > n) {
    std::vector<Vec2> thin;
    for (int i = 0; i < n; ++i) thin.push_back(out[i * out.size() / n]);
    out.swap(thin);
  }
  return out;
}

}  // namespace frechet

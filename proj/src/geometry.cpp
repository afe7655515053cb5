#include "frechet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "frechet/error.hpp"

namespace frechet {

bool Triangle3::is_degenerate() const {
  const double l = std::max({norm2(b - a), norm2(c - b), norm2(a - c)});
  return l == 0.0 || norm(normal()) <= 1e-12 * l;
}

namespace {

void require_valid(const Triangle3& t) {
  if (!t.allow_degenerate && t.is_degenerate()) throw InputError("degenerate triangle");
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Segment crosses the triangle's interior (non-coplanar configuration).
bool segment_pierces(const Segment3& s, const Triangle3& t) {
  const Vec3 n = t.normal();
  const double da = dot(s.a - t.a, n);
  const double db = dot(s.b - t.a, n);
  if ((da > 0.0 && db > 0.0) || (da < 0.0 && db < 0.0) || da == db) return false;
  const double lambda = da / (da - db);
  const Vec3 p = s.a + lambda * (s.b - s.a);
  const double w0 = dot(cross(t.b - t.a, p - t.a), n);
  const double w1 = dot(cross(t.c - t.b, p - t.b), n);
  const double w2 = dot(cross(t.a - t.c, p - t.c), n);
  return (w0 >= 0.0 && w1 >= 0.0 && w2 >= 0.0) || (w0 <= 0.0 && w1 <= 0.0 && w2 <= 0.0);
}

}  // namespace

Vec3 closest_point_on_segment(Vec3 p, const Segment3& s) {
  const Vec3 d = s.b - s.a;
  const double l2 = norm2(d);
  if (l2 == 0.0) return s.a;
  return s.a + clamp01(dot(p - s.a, d) / l2) * d;
}

// Region classification over the Voronoi regions of the triangle's features.
Vec3 closest_point_on_triangle(Vec3 p, const Triangle3& t) {
  const Vec3 ab = t.b - t.a, ac = t.c - t.a, ap = p - t.a;
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return t.a;
  const Vec3 bp = p - t.b;
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return t.b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return t.a + (d1 / (d1 - d3)) * ab;
  const Vec3 cp = p - t.c;
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return t.c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return t.a + (d2 / (d2 - d6)) * ac;
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
    return t.b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (t.c - t.b);
  const double denom = 1.0 / (va + vb + vc);
  return t.a + (vb * denom) * ab + (vc * denom) * ac;
}

double dist_point_segment(Vec3 p, const Segment3& s) { return distance(p, closest_point_on_segment(p, s)); }

double dist_point_triangle(Vec3 p, const Triangle3& t) {
  require_valid(t);
  return distance(p, closest_point_on_triangle(p, t));
}

ClosestPair closest_segment_segment(const Segment3& s1, const Segment3& s2) {
  const Vec3 d1 = s1.b - s1.a, d2 = s2.b - s2.a, r = s1.a - s2.a;
  const double a = norm2(d1), e = norm2(d2), f = dot(d2, r);
  double s = 0.0, u = 0.0;
  if (a == 0.0 && e == 0.0) {
    s = u = 0.0;
  } else if (a == 0.0) {
    u = clamp01(f / e);
  } else {
    const double c = dot(d1, r);
    if (e == 0.0) {
      s = clamp01(-c / a);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      s = denom > 1e-14 * a * e ? clamp01((b * f - c * e) / denom) : 0.0;
      u = (b * s + f) / e;
      if (u < 0.0) {
        u = 0.0;
        s = clamp01(-c / a);
      } else if (u > 1.0) {
        u = 1.0;
        s = clamp01((b - c) / a);
      }
    }
  }
  const Vec3 p = s1.a + s * d1, q = s2.a + u * d2;
  ClosestPair out{distance(p, q), p, q};
  // Parallel segments: the clamped solution above may miss an endpoint pairing.
  for (const auto& [x, seg, first] : {std::tuple{s1.a, s2, true}, std::tuple{s1.b, s2, true},
                                      std::tuple{s2.a, s1, false}, std::tuple{s2.b, s1, false}}) {
    const Vec3 y = closest_point_on_segment(x, seg);
    const double dd = distance(x, y);
    if (dd < out.distance) out = first ? ClosestPair{dd, x, y} : ClosestPair{dd, y, x};
  }
  return out;
}

double dist_segment_segment(const Segment3& s1, const Segment3& s2) {
  return closest_segment_segment(s1, s2).distance;
}

double dist_segment_triangle(const Segment3& s, const Triangle3& t) {
  require_valid(t);
  if (segment_pierces(s, t)) return 0.0;
  double best = std::min(dist_point_triangle(s.a, t), dist_point_triangle(s.b, t));
  best = std::min(best, dist_segment_segment(s, {t.a, t.b}));
  best = std::min(best, dist_segment_segment(s, {t.b, t.c}));
  best = std::min(best, dist_segment_segment(s, {t.c, t.a}));
  return best;
}

double dist_triangle_triangle(const Triangle3& t1, const Triangle3& t2) {
  require_valid(t1);
  require_valid(t2);
  double best = dist_segment_triangle({t1.a, t1.b}, t2);
  best = std::min(best, dist_segment_triangle({t1.b, t1.c}, t2));
  best = std::min(best, dist_segment_triangle({t1.c, t1.a}, t2));
  best = std::min(best, dist_segment_triangle({t2.a, t2.b}, t1));
  best = std::min(best, dist_segment_triangle({t2.b, t2.c}, t1));
  best = std::min(best, dist_segment_triangle({t2.c, t2.a}, t1));
  return best;
}

double diameter(const Triangle3& t) {
  return std::max({distance(t.a, t.b), distance(t.b, t.c), distance(t.c, t.a)});
}

}  // namespace frechet

#include "frechet/critical_values.hpp"

#include <algorithm>
#include <cmath>

#include "frechet/conic.hpp"
#include "frechet/error.hpp"
#include "frechet/parallel.hpp"
#include "frechet/polynomial.hpp"

namespace frechet {

const char* to_string(CriticalKind k) {
  switch (k) {
    case CriticalKind::T1: return "T1";
    case CriticalKind::T2a: return "T2a";
    case CriticalKind::T2b: return "T2b";
    case CriticalKind::T2c: return "T2c";
    case CriticalKind::T2d: return "T2d";
  }
  return "?";
}

namespace {

// Closed-form kinds come first; T2b and T2c values are roots found numerically.
int precision_rank(CriticalKind k) {
  switch (k) {
    case CriticalKind::T2b: return 1;
    case CriticalKind::T2c: return 2;
    default: return 0;
  }
}

}  // namespace

void sort_and_dedupe(std::vector<CriticalValue>& v, const Tolerance& tol) {
  std::stable_sort(v.begin(), v.end(),
                   [](const CriticalValue& a, const CriticalValue& b) { return a.value < b.value; });
  const Tolerance wide = tol.scaled(10.0);
  std::vector<CriticalValue> out;
  double run_start = 0.0;
  auto add_kinds = [](std::vector<CriticalKind>& m, const CriticalValue& c) {
    for (CriticalKind k : c.merged_kinds)
      if (std::find(m.begin(), m.end(), k) == m.end()) m.push_back(k);
    if (std::find(m.begin(), m.end(), c.kind) == m.end()) m.push_back(c.kind);
  };
  for (auto& c : v) {
    if (out.empty() || !tol_equal(run_start, c.value, wide)) {
      run_start = c.value;
      out.push_back(std::move(c));
      add_kinds(out.back().merged_kinds, out.back());
    } else if (precision_rank(c.kind) < precision_rank(out.back().kind)) {
      std::vector<CriticalKind> m = std::move(out.back().merged_kinds);
      add_kinds(m, c);
      out.back() = std::move(c);
      out.back().merged_kinds = std::move(m);
    } else {
      add_kinds(out.back().merged_kinds, c);
    }
  }
  for (auto& c : out) std::sort(c.merged_kinds.begin(), c.merged_kinds.end());
  v.swap(out);
}

namespace {

constexpr double kParallel = 1e-9;

// One side of the pair: simplices of the first surface against triangles of the second.
struct Sides {
  char side;
  const Surface* s;
  const std::vector<Triangle3>* own_tris;
  const std::vector<Segment3>* own_edges;
  const std::vector<Triangle3>* other_tris;
  const std::vector<Segment3>* other_edges;
};

std::array<Sides, 2> sides_of(const SurfacePair& p) {
  return {Sides{'K', &p.f(), &p.f_triangles(), &p.f_edges(), &p.g_triangles(), &p.g_edges()},
          Sides{'L', &p.g(), &p.g_triangles(), &p.g_edges(), &p.f_triangles(), &p.f_edges()}};
}

// Squared distance to a feature support along a segment: c0 + c1 t + c2 t^2, with the
// t-interval of the feature's nearest-point region.
struct FeatureOnSegment {
  Feature feature;
  double c0, c1, c2;
  double tlo, thi;
};

std::vector<FeatureOnSegment> features_on_segment(const Segment3& s, const Triangle3& t) {
  std::vector<FeatureOnSegment> out;
  const double scale = std::max({1.0, norm(s.a), norm(s.b), norm(t.a), norm(t.b), norm(t.c)});
  for (const Feature f : triangle_features()) {
    double lo = 0.0, hi = 1.0;
    bool empty = false;
    for (const auto& h : feature_region(t, f)) {
      const double v0 = h.value(s.a), v1 = h.value(s.b);
      const double slack = 1e-9 * scale * norm(h.normal);
      const double k = v1 - v0;
      if (std::fabs(k) <= 1e-15 * scale * norm(h.normal)) {
        if (v0 > slack) empty = true;
        continue;
      }
      const double lam = (slack - v0) / k;
      if (k > 0)
        hi = std::min(hi, lam);
      else
        lo = std::max(lo, lam);
    }
    if (empty || lo > hi) continue;
    const Vec3 mid = 0.5 * (s.a + s.b);
    const double d0 = feature_support_distance2(t, f, s.a);
    const double dh = feature_support_distance2(t, f, mid);
    const double d1 = feature_support_distance2(t, f, s.b);
    const double c2 = 2.0 * (d1 - 2.0 * dh + d0);
    out.push_back({f, d0, d1 - d0 - c2, c2, std::clamp(lo, 0.0, 1.0), std::clamp(hi, 0.0, 1.0)});
  }
  return out;
}

bool same_feature_distance(const FeatureOnSegment& a, const FeatureOnSegment& b) {
  const double s = std::max({1.0, std::fabs(a.c0), std::fabs(a.c1), std::fabs(a.c2)});
  return std::fabs(a.c0 - b.c0) <= 1e-12 * s && std::fabs(a.c1 - b.c1) <= 1e-12 * s &&
         std::fabs(a.c2 - b.c2) <= 1e-12 * s;
}

void type_2b(const Segment3& s, const Triangle3& t1, const Triangle3& t2, const std::vector<FeatureOnSegment>& f1,
             const std::vector<FeatureOnSegment>& f2, std::vector<double>& out) {
  for (const auto& a : f1)
    for (const auto& b : f2) {
      const double lo = std::max(a.tlo, b.tlo), hi = std::min(a.thi, b.thi);
      if (lo > hi + 1e-12) continue;
      if (same_feature_distance(a, b)) continue;
      const double q2 = a.c2 - b.c2, q1 = a.c1 - b.c1, q0 = a.c0 - b.c0;
      std::vector<double> ts = solve_quadratic(q2, q1, q0);
      // apex and range ends catch tangential contacts lost to rounding
      if (q2 != 0.0) ts.push_back(-q1 / (2 * q2));
      ts.push_back(lo);
      ts.push_back(hi);
      for (double t : ts) {
        if (t < lo - 1e-9 || t > hi + 1e-9) continue;
        t = std::clamp(t, 0.0, 1.0);
        const Vec3 x = s.a + t * (s.b - s.a);
        const double d1 = dist_point_triangle(x, t1), d2 = dist_point_triangle(x, t2);
        if (std::fabs(d1 - d2) <= 1e-9 * std::max(1.0, std::max(d1, d2))) out.push_back(std::max(d1, d2));
      }
    }
}

Vec3 unit_normal(const Triangle3& t) { return normalized(t.normal()); }

double line_line_distance(const Segment3& a, const Segment3& b) {
  const Vec3 u = normalized(a.b - a.a);
  const Vec3 w = b.a - a.a;
  return norm(w - dot(w, u) * u);
}

// Distances between parallel supporting lines/planes of two simplex collections.
void parallel_pairs(const std::vector<Segment3>& ea, const std::vector<Triangle3>& ta,
                    const std::vector<Segment3>& eb, const std::vector<Triangle3>& tb, bool same, double factor,
                    char side, std::vector<CriticalValue>& out) {
  auto emit = [&](double d, const char* what, int i, int j) {
    out.push_back({factor * d, CriticalKind::T2d, side, what, {i, j}, {}});
  };
  for (int i = 0; i < static_cast<int>(ea.size()); ++i) {
    const Vec3 u = normalized(ea[i].b - ea[i].a);
    for (int j = same ? i + 1 : 0; j < static_cast<int>(eb.size()); ++j) {
      const Vec3 v = normalized(eb[j].b - eb[j].a);
      if (norm(cross(u, v)) <= kParallel) emit(line_line_distance(ea[i], eb[j]), "edge,edge", i, j);
    }
    for (int j = 0; j < static_cast<int>(tb.size()); ++j) {
      const Vec3 n = unit_normal(tb[j]);
      if (std::fabs(dot(u, n)) <= kParallel) emit(std::fabs(dot(ea[i].a - tb[j].a, n)), "edge,tri", i, j);
    }
  }
  for (int i = 0; i < static_cast<int>(ta.size()); ++i) {
    const Vec3 n = unit_normal(ta[i]);
    if (!same)
      for (int j = 0; j < static_cast<int>(eb.size()); ++j) {
        const Vec3 v = normalized(eb[j].b - eb[j].a);
        if (std::fabs(dot(v, n)) <= kParallel) emit(std::fabs(dot(eb[j].a - ta[i].a, n)), "tri,edge", i, j);
      }
    for (int j = same ? i + 1 : 0; j < static_cast<int>(tb.size()); ++j) {
      const Vec3 m = unit_normal(tb[j]);
      if (norm(cross(n, m)) <= kParallel) emit(std::fabs(dot(tb[j].a - ta[i].a, n)), "tri,tri", i, j);
    }
  }
}

}  // namespace

std::vector<CriticalValue> critical_values_C1(const SurfacePair& p, const Tolerance& tol, int threads) {
  std::vector<CriticalValue> out;
  for (const Sides& sd : sides_of(p)) {
    const auto& edges = *sd.own_edges;
    const auto& other = *sd.other_tris;
    const BoundaryCellId::Side bside = sd.side == 'K' ? BoundaryCellId::Side::KEdge : BoundaryCellId::Side::LEdge;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      for (int t = 0; t < static_cast<int>(other.size()); ++t)
        out.push_back({p.boundary_distance({bside, e, t}), CriticalKind::T1, sd.side, "edge,tri", {e, t}, {}});
    for (int v = 0; v < static_cast<int>(sd.s->image.size()); ++v)
      for (int t = 0; t < static_cast<int>(other.size()); ++t)
        out.push_back({dist_point_triangle(sd.s->image[v], other[t]), CriticalKind::T2a, sd.side, "vertex,tri",
                       {v, t}, {}});

    // T2b: per edge, all pairs of triangles of the other surface.
    const int ne = static_cast<int>(edges.size()), nt = static_cast<int>(other.size());
    std::vector<std::vector<CriticalValue>> per_edge(ne);
    parallel_for(ne, threads, [&](int e) {
      std::vector<std::vector<FeatureOnSegment>> feats(nt);
      for (int t = 0; t < nt; ++t) feats[t] = features_on_segment(edges[e], other[t]);
      std::vector<double> vals;
      for (int t1 = 0; t1 < nt; ++t1)
        for (int t2 = t1 + 1; t2 < nt; ++t2) {
          vals.clear();
          type_2b(edges[e], other[t1], other[t2], feats[t1], feats[t2], vals);
          for (double v : vals) per_edge[e].push_back({v, CriticalKind::T2b, sd.side, "edge,tri,tri", {e, t1, t2}, {}});
        }
    });
    for (auto& v : per_edge)
      for (auto& c : v) out.push_back(std::move(c));

    // T2d within this surface: half the distance between parallel supports.
    parallel_pairs(edges, *sd.own_tris, edges, *sd.own_tris, true, 0.5, sd.side, out);
  }
  parallel_pairs(p.f_edges(), p.f_triangles(), p.g_edges(), p.g_triangles(), false, 1.0, 'K', out);
  sort_and_dedupe(out, tol);
  return out;
}

namespace {

struct PlaneFeature {
  int partner;
  Feature feature;
  Conic d2;
  std::vector<HalfPlane> region;
  Box2 box;  // bounding box of the region clipped to the target
};

std::vector<Vec2> clip_polygon(std::vector<Vec2> poly, const HalfPlane& h, double slack) {
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
    const double va = h.value(a) - slack, vb = h.value(b) - slack;
    if (va <= 0) out.push_back(a);
    if ((va < 0 && vb > 0) || (va > 0 && vb < 0)) out.push_back(a + (va / (va - vb)) * (b - a));
  }
  return out;
}

void type_2c_for_target(const Triangle3& target, const std::vector<Triangle3>& others, const std::vector<int>& near,
                        double lo, double hi, char side, int target_index, std::vector<CriticalValue>& out) {
  const Plane2Frame frame = Plane2Frame::of_triangle(target);
  const std::vector<Vec2> poly{frame.project(target.a), frame.project(target.b), frame.project(target.c)};
  Box2 tbox;
  for (Vec2 v : poly) tbox.add(v);
  const double scale = std::max({1.0, std::fabs(tbox.xmin), std::fabs(tbox.xmax), std::fabs(tbox.ymin),
                                 std::fabs(tbox.ymax), hi});
  const double slack = 1e-9 * scale;
  std::vector<std::vector<PlaneFeature>> feats(near.size());
  for (std::size_t i = 0; i < near.size(); ++i) {
    const auto fields = feature_fields(others[near[i]], frame);
    for (const auto& fld : fields) {
      if (fld.region_empty) continue;
      std::vector<Vec2> piece = poly;
      for (const auto& h : fld.region) {
        piece = clip_polygon(piece, h, slack);
        if (piece.empty()) break;
      }
      if (piece.empty()) continue;
      double dmax = 0.0;
      Box2 box;
      for (Vec2 v : piece) {
        dmax = std::max(dmax, fld.squared_distance(v));
        box.add(v);
      }
      if (std::sqrt(std::max(0.0, dmax)) < lo * (1 - 1e-9) - 1e-12) continue;
      feats[i].push_back({static_cast<int>(i), fld.feature, fld.squared_distance, fld.region, box.expanded(slack)});
    }
  }
  auto inside_target = [&](Vec2 p) {
    for (int i = 0; i < 3; ++i) {
      const Vec2 a = poly[i], b = poly[(i + 1) % 3];
      const double len = norm(b - a);
      if (cross(b - a, p - a) / len < -slack) return false;
    }
    return true;
  };
  auto in_region = [&](const PlaneFeature& f, Vec2 p) {
    for (const auto& h : f.region)
      if (h.value(p) > slack) return false;
    return true;
  };
  const int np = static_cast<int>(near.size());
  for (int i = 0; i < np; ++i)
    for (int j = i + 1; j < np; ++j)
      for (int k = j + 1; k < np; ++k)
        for (const auto& a : feats[i])
          for (const auto& b : feats[j]) {
            const Box2 ab = a.box.intersect(b.box);
            if (ab.empty()) continue;
            const Conic c1 = a.d2 - b.d2;
            for (const auto& c : feats[k]) {
              const Box2 w = ab.intersect(c.box);
              if (w.empty()) continue;
              std::vector<Vec2> pts;
              try {
                pts = conic_intersections(c1, a.d2 - c.d2, w);
              } catch (const NumericError&) {
                continue;
              }
              for (Vec2 p : pts) {
                if (!inside_target(p) || !in_region(a, p) || !in_region(b, p) || !in_region(c, p)) continue;
                const Vec3 x = frame.lift(p);
                const double d1 = dist_point_triangle(x, others[near[i]]);
                const double d2 = dist_point_triangle(x, others[near[j]]);
                const double d3 = dist_point_triangle(x, others[near[k]]);
                const double dmax = std::max({d1, d2, d3}), dmin = std::min({d1, d2, d3});
                if (dmax - dmin > 1e-8 * std::max(1.0, dmax)) continue;
                if (dmax < lo * (1 - 1e-9) - 1e-12 || dmax > hi * (1 + 1e-9) + 1e-12) continue;
                out.push_back({dmax, CriticalKind::T2c, side, "tri,tri,tri,tri",
                               {target_index, near[i], near[j], near[k]}, {}});
              }
            }
          }
}

}  // namespace

std::vector<CriticalValue> critical_values_2c(const SurfacePair& p, double lo, double hi, const Tolerance& tol,
                                              int threads) {
  if (!(lo <= hi)) throw InputError("critical_values_2c: lo must not exceed hi");
  std::vector<CriticalValue> out;
  for (const Sides& sd : sides_of(p)) {
    const auto& own = *sd.own_tris;
    const auto& other = *sd.other_tris;
    const int nt = static_cast<int>(own.size());
    std::vector<std::vector<CriticalValue>> per(nt);
    parallel_for(nt, threads, [&](int t) {
      std::vector<int> near;
      for (int o = 0; o < static_cast<int>(other.size()); ++o) {
        const CellId c = sd.side == 'K' ? CellId{t, o} : CellId{o, t};
        if (tol_leq(p.cell_distance(c), hi, tol)) near.push_back(o);
      }
      if (near.size() >= 3) type_2c_for_target(own[t], other, near, lo, hi, sd.side, t, per[t]);
    });
    for (auto& v : per)
      for (auto& c : v) out.push_back(std::move(c));
  }
  sort_and_dedupe(out, tol);
  return out;
}

}  // namespace frechet

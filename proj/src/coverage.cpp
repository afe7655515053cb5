#include "frechet/coverage.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "frechet/error.hpp"
#include "frechet/parallel.hpp"

namespace frechet {

namespace {

constexpr double kPerturbAngle = 0.0123456789;

struct EventPoint {
  double x, y;
};

bool point_covered(Vec3 p, const std::vector<Triangle3>& partners, double eps, const Tolerance& tol, int* who) {
  for (int i = 0; i < static_cast<int>(partners.size()); ++i)
    if (tol_leq(dist_point_triangle(p, partners[i]), eps, tol)) {
      if (who) *who = i;
      return true;
    }
  return false;
}

// y-interval of the triangle on the vertical line through x.
bool chord(const std::array<Vec2, 3>& c, double x, double& ylo, double& yhi) {
  ylo = std::numeric_limits<double>::infinity();
  yhi = -ylo;
  for (int i = 0; i < 3; ++i) {
    const Vec2 a = c[i], b = c[(i + 1) % 3];
    const double lo = std::min(a.x, b.x), hi = std::max(a.x, b.x);
    if (x < lo || x > hi) continue;
    if (hi - lo <= 0.0) {
      ylo = std::min({ylo, a.y, b.y});
      yhi = std::max({yhi, a.y, b.y});
      continue;
    }
    const double y = a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
  return ylo <= yhi;
}

enum class SweepResult { Covered, Uncovered, Retry };

SweepResult sweep(const Plane2Frame& frame, const Triangle3& target, const std::vector<Triangle3>& partners,
                  double eps, const Tolerance& tol, bool allow_retry, TriangleArrangement* out) {
  const std::array<Vec2, 3> corners{frame.project(target.a), frame.project(target.b), frame.project(target.c)};
  Box2 tbox;
  for (Vec2 c : corners) tbox.add(c);
  const double scale = std::max({1.0, std::fabs(tbox.xmin), std::fabs(tbox.xmax), std::fabs(tbox.ymin),
                                 std::fabs(tbox.ymax), eps});
  const Box2 window = tbox.expanded(1e-9 * scale);
  const double eps_arc = eps > 0.0 ? eps : std::max(tol.abs, 1e-300);

  std::vector<ConicArc> arcs;
  int max_arcs = 0;
  for (int i = 0; i < static_cast<int>(partners.size()); ++i) {
    NeighborhoodSection s = eps_neighborhood_plane_boundary(partners[i], eps_arc, frame, tol);
    max_arcs = std::max(max_arcs, static_cast<int>(s.arcs.size()));
    for (auto& a : s.arcs) {
      if (!a.bounds.overlaps(window)) continue;
      a.tag = i;
      arcs.push_back(std::move(a));
    }
  }

  std::vector<EventPoint> ev;
  for (Vec2 c : corners) ev.push_back({c.x, c.y});
  auto add = [&](Vec2 p) {
    if (window.contains(p)) ev.push_back({p.x, p.y});
  };
  for (const auto& a : arcs) {
    for (Vec2 p : arc_endpoints(a)) add(p);
    for (Vec2 p : arc_vertical_extremes(a)) add(p);
    for (int i = 0; i < 3; ++i)
      for (Vec2 p : conic_line_intersections(a.conic, corners[i], corners[(i + 1) % 3] - corners[i], 0.0, 1.0))
        if (a.in_range(p, kClipSlack)) add(p);
  }
  for (std::size_t i = 0; i < arcs.size(); ++i)
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      if (arcs[i].tag == arcs[j].tag || !arcs[i].bounds.overlaps(arcs[j].bounds)) continue;
      try {
        for (Vec2 p : arc_pair_intersections(arcs[i], arcs[j])) add(p);
      } catch (const OverlappingArcs&) {
        // shared supporting conic: the pieces meet only at their endpoints
      }
    }
  std::sort(ev.begin(), ev.end(), [](const EventPoint& a, const EventPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });

  std::vector<double> xs;
  const double merge = 1e-12 * scale;
  bool aligned = false;
  for (std::size_t i = 0; i < ev.size();) {
    std::size_t j = i;
    double ymin = ev[i].y, ymax = ev[i].y;
    while (j + 1 < ev.size() && ev[j + 1].x - ev[i].x <= tol.slack(ev[i].x, ev[j + 1].x) + merge) {
      ++j;
      ymin = std::min(ymin, ev[j].y);
      ymax = std::max(ymax, ev[j].y);
    }
    if (j > i && ev[j].x != ev[i].x && ymax - ymin > 1e-9 * scale) aligned = true;
    xs.push_back(ev[i].x);
    i = j + 1;
  }
  if (aligned && allow_retry) return SweepResult::Retry;

  if (out) {
    out->frame = frame;
    out->corners = corners;
    out->arcs = arcs;
    out->events = xs;
    out->faces.clear();
    out->max_arcs_per_section = max_arcs;
  }

  bool all_covered = true;
  std::vector<double> ys;
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    const double x0 = xs[s], x1 = xs[s + 1];
    if (x1 - x0 <= merge) continue;
    const double xm = 0.5 * (x0 + x1);
    double ylo, yhi;
    if (!chord(corners, xm, ylo, yhi)) continue;
    ys.clear();
    ys.push_back(ylo);
    for (const auto& a : arcs) {
      if (xm < a.bounds.xmin - kClipSlack || xm > a.bounds.xmax + kClipSlack) continue;
      for (double y : arc_y_at(a, xm))
        if (y > ylo && y < yhi) ys.push_back(y);
    }
    ys.push_back(yhi);
    std::sort(ys.begin(), ys.end());
    for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
      if (ys[k + 1] - ys[k] <= 0.0) continue;
      const Vec2 p{xm, 0.5 * (ys[k] + ys[k + 1])};
      int who = -1;
      const bool covered = point_covered(frame.lift(p), partners, eps, tol, &who);
      if (out) {
        ArrangementFace face;
        face.x0 = x0;
        face.x1 = x1;
        face.bottom = {ys[k], ys[k]};
        face.top = {ys[k + 1], ys[k + 1]};
        face.sample = p;
        face.covered = covered;
        face.witness = who;
        out->faces.push_back(face);
      }
      if (!covered) {
        all_covered = false;
        if (!out) return SweepResult::Uncovered;
      }
    }
  }
  return all_covered ? SweepResult::Covered : SweepResult::Uncovered;
}

}  // namespace

bool triangle_covered(const Triangle3& target, const std::vector<Triangle3>& partners, double eps,
                      const Tolerance& tol, TriangleArrangement* arrangement) {
  if (!(eps >= 0.0)) throw InputError("triangle_covered: eps must be nonnegative");
  if (target.is_degenerate()) throw InputError("degenerate triangle");
  if (partners.empty()) {
    if (arrangement) *arrangement = {};
    return false;
  }
  if (!arrangement) {
    for (int i = 0; i < 3; ++i)
      if (!point_covered(target[i], partners, eps, tol, nullptr)) return false;
    for (const auto& p : partners) {
      bool all = true;
      for (int i = 0; i < 3 && all; ++i) all = tol_leq(dist_point_triangle(target[i], p), eps, tol);
      if (all) return true;
    }
  }
  const Plane2Frame frame = Plane2Frame::of_triangle(target);
  SweepResult r = sweep(frame, target, partners, eps, tol, true, arrangement);
  if (r == SweepResult::Retry) {
    r = sweep(frame.rotated(kPerturbAngle), target, partners, eps, tol, false, arrangement);
    if (arrangement) arrangement->perturbed = true;
  }
  return r == SweepResult::Covered;
}

bool triangle_covered(const Surface& f, const Surface& g, int dk, const std::vector<int>& partners, double eps,
                      const Tolerance& tol, TriangleArrangement* arrangement) {
  if (dk < 0 || dk >= f.triangle_count()) throw InputError("triangle index out of range");
  std::vector<Triangle3> ps;
  for (int l : partners) {
    if (l < 0 || l >= g.triangle_count()) throw InputError("partner index out of range");
    ps.push_back(g.image_triangle(l));
  }
  return triangle_covered(f.image_triangle(dk), ps, eps, tol, arrangement);
}

bool component_extensive(const SurfacePair& p, const std::vector<CellId>& comp, double eps, const Tolerance& tol,
                         int threads) {
  std::vector<std::vector<int>> kpartners(p.m()), lpartners(p.n());
  for (const auto& c : comp) {
    kpartners[c.k].push_back(c.l);
    lpartners[c.l].push_back(c.k);
  }
  for (const auto& v : kpartners)
    if (v.empty()) return false;
  for (const auto& v : lpartners)
    if (v.empty()) return false;
  const int total = p.m() + p.n();
  std::atomic<bool> failed{false};
  parallel_for(total, threads, [&](int i) {
    if (failed.load()) return;
    std::vector<Triangle3> ps;
    bool covered;
    if (i < p.m()) {
      for (int l : kpartners[i]) ps.push_back(p.g_triangles()[l]);
      covered = triangle_covered(p.f_triangles()[i], ps, eps, tol);
    } else {
      const int l = i - p.m();
      for (int k : lpartners[l]) ps.push_back(p.f_triangles()[k]);
      covered = triangle_covered(p.g_triangles()[l], ps, eps, tol);
    }
    if (!covered) failed.store(true);
  });
  return !failed.load();
}

bool component_extensive(const Surface& f, const Surface& g, const std::vector<CellId>& comp, double eps,
                         const Tolerance& tol) {
  return component_extensive(SurfacePair(f, g), comp, eps, tol);
}

}  // namespace frechet

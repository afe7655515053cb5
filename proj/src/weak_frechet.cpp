#include "frechet/weak_frechet.hpp"

#include <algorithm>
#include <cmath>

#include "frechet/coverage.hpp"
#include "frechet/error.hpp"

namespace frechet {

const char* to_string(SearchMode m) { return m == SearchMode::ExactCriticals ? "exact" : "bisect"; }

bool decide(const SurfacePair& p, double eps, const Tolerance& tol, int threads, std::vector<CellId>* witness) {
  if (!(eps >= 0.0)) throw InputError("decide: eps must be nonnegative");
  const FreeSpaceGraph g = build_graph(p, eps, tol);
  for (auto& comp : components(g)) {
    if (component_extensive(p, comp, eps, tol, threads)) {
      if (witness) *witness = std::move(comp);
      return true;
    }
  }
  if (witness) witness->clear();
  return false;
}

bool decide(const Surface& f, const Surface& g, double eps, const Tolerance& tol) {
  return decide(SurfacePair(f, g), eps, tol);
}

double image_diameter(const SurfacePair& p) {
  std::vector<Vec3> pts = p.f().image;
  pts.insert(pts.end(), p.g().image.begin(), p.g().image.end());
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, distance(pts[i], pts[j]));
  return d;
}

WeakFrechetResult compute(const SurfacePair& p, SearchMode mode, const Tolerance& tol, int threads) {
  tol.check();
  WeakFrechetResult r;
  r.mode = mode;
  auto probe = [&](double eps) {
    const bool a = decide(p, eps, tol, threads);
    r.probes.push_back({eps, a});
    return a;
  };

  std::vector<CriticalValue> c1 = critical_values_C1(p, tol, threads);
  r.c1_count = static_cast<int>(c1.size());
  double top = image_diameter(p);
  if (c1.empty() || c1.back().value < top)
    c1.push_back({top, CriticalKind::T1, 'K', "diameter", {}, {}});
  if (!probe(c1.back().value)) {
    // Unreachable for valid input; keep growing rather than return a wrong bracket.
    double e = c1.back().value;
    int guard = 0;
    do {
      e = 2.0 * e + 1.0;
      if (++guard > 60) throw NumericError("compute: no eps with a positive decision");
    } while (!probe(e));
    c1.push_back({e, CriticalKind::T1, 'K', "diameter", {}, {}});
  }

  // Smallest index with a positive decision.
  int lo_i = -1, hi_i = static_cast<int>(c1.size()) - 1;
  while (hi_i - lo_i > 1) {
    const int mid = lo_i + (hi_i - lo_i) / 2;
    if (probe(c1[mid].value))
      hi_i = mid;
    else
      lo_i = mid;
  }
  const double hi = c1[hi_i].value;
  const double lo = lo_i >= 0 ? c1[lo_i].value : hi;
  r.bracket_lo = lo;
  r.bracket_hi = hi;
  r.distance = hi;
  r.matched = c1[hi_i];

  if (lo_i >= 0) {
    if (mode == SearchMode::ExactCriticals) {
      std::vector<CriticalValue> c2 = critical_values_2c(p, lo, hi, tol, threads);
      r.c2_count = static_cast<int>(c2.size());
      std::vector<CriticalValue> inside;
      for (auto& c : c2)
        if (c.value > lo && c.value < hi && !tol_equal(c.value, hi, tol)) inside.push_back(c);
      int a = -1, b = static_cast<int>(inside.size());
      while (b - a > 1) {
        const int mid = a + (b - a) / 2;
        if (probe(inside[mid].value))
          b = mid;
        else
          a = mid;
      }
      if (b < static_cast<int>(inside.size())) {
        r.distance = inside[b].value;
        r.matched = inside[b];
      }
    } else {
      // Probes here use a finer tolerance so the accepted value cannot sit a full
      // tolerance below the flip point.
      const Tolerance fine = tol.scaled(0.01);
      double a = lo, b = hi;
      while (!tol_equal(a, b, fine)) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const bool ans = decide(p, mid, fine, threads);
        r.probes.push_back({mid, ans});
        if (ans)
          b = mid;
        else
          a = mid;
      }
      r.distance = b;
      if (!tol_equal(b, hi, tol)) r.matched.reset();
    }
  }
  r.witness_eps = r.distance;
  decide(p, r.distance, tol, threads, &r.witness_component);
  return r;
}

WeakFrechetResult compute(const Surface& f, const Surface& g, SearchMode mode, const Tolerance& tol) {
  return compute(SurfacePair(f, g), mode, tol);
}

namespace {

double directed_sampled(const Surface& from, const std::vector<Triangle3>& to, double density) {
  double best = 0.0;
  for (int t = 0; t < from.triangle_count(); ++t) {
    const Triangle3 tri = from.image_triangle(t);
    const int k = std::max(1, static_cast<int>(std::ceil(diameter(tri) / density)));
    for (int i = 0; i <= k; ++i)
      for (int j = 0; i + j <= k; ++j) {
        const double a = static_cast<double>(i) / k, b = static_cast<double>(j) / k;
        const Vec3 x = tri.a + a * (tri.b - tri.a) + b * (tri.c - tri.a);
        double d = 1e300;
        for (const auto& q : to) d = std::min(d, dist_point_triangle(x, q));
        best = std::max(best, d);
      }
  }
  return best;
}

}  // namespace

HausdorffBounds hausdorff_sampled(const Surface& f, const Surface& g, double density) {
  if (!(density > 0.0)) throw InputError("hausdorff_sampled: density must be positive");
  const auto ft = image_triangles(f), gt = image_triangles(g);
  const double lower = std::max(directed_sampled(f, gt, density), directed_sampled(g, ft, density));
  return {lower, lower + density};
}

}  // namespace frechet

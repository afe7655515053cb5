#include "frechet/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "frechet/error.hpp"
#include "frechet/geometry.hpp"
#include "frechet/polynomial.hpp"

namespace frechet {

Vec3 PolyCurve::at(double s) const {
  const int n = segments();
  if (s <= 0) return vertices.front();
  if (s >= n) return vertices.back();
  const int i = std::min(n - 1, static_cast<int>(std::floor(s)));
  const double t = s - i;
  return vertices[i] + t * (vertices[i + 1] - vertices[i]);
}

void require_valid(const PolyCurve& c) {
  if (c.dimension != 2 && c.dimension != 3) throw InputError("curve dimension must be 2 or 3");
  if (c.vertices.size() < 2) throw InputError("curve needs at least 2 vertices");
  for (const auto& v : c.vertices)
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
      throw InputError("non-finite curve vertex");
}

PolyCurve reversed(const PolyCurve& c) {
  PolyCurve r = c;
  std::reverse(r.vertices.begin(), r.vertices.end());
  return r;
}

namespace {

// Closed tolerance-aware radius used for every free-space membership test.
double effective(double eps, const Tolerance& tol) { return eps + tol.slack(eps, eps); }

FreeInterval free_interval(Vec3 q, Vec3 a, Vec3 b, double r) {
  const Vec3 d = b - a, w = a - q;
  const double a2 = dot(d, d), a1 = 2 * dot(d, w), a0 = dot(w, w) - r * r;
  if (a2 == 0.0) return a0 <= 0 ? FreeInterval{0, 1} : FreeInterval{};
  const double disc = a1 * a1 - 4 * a2 * a0;
  if (disc < 0) return {};
  const auto roots = solve_quadratic(a2, a1, a0);
  if (roots.empty()) return {};
  const double lo = std::max(0.0, roots.front()), hi = std::min(1.0, roots.back());
  if (lo > hi) return {};
  return {lo, hi};
}

struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// Sub-interval of [0,1] where the distance from a(s) on segment (a0,a1) to segment (b0,b1)
// is at most r. The function is convex in s, so the set is an interval around the minimizer.
FreeInterval segment_projection(Vec3 a0, Vec3 a1, Vec3 b0, Vec3 b1, double r) {
  const ClosestPair cp = closest_segment_segment({a0, a1}, {b0, b1});
  if (cp.distance > r) return {};
  const Vec3 d = a1 - a0;
  const double l2 = norm2(d);
  const double s0 = l2 == 0.0 ? 0.0 : std::clamp(dot(cp.on_first - a0, d) / l2, 0.0, 1.0);
  auto phi = [&](double s) { return dist_point_segment(a0 + s * d, {b0, b1}); };
  auto edge = [&](double inside, double outside) {
    if (phi(outside) <= r) return outside;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (inside + outside);
      (phi(mid) <= r ? inside : outside) = mid;
    }
    return inside;
  };
  return {edge(s0, 0.0), edge(s0, 1.0)};
}

bool covers(std::vector<std::pair<double, double>> iv, double total) {
  std::sort(iv.begin(), iv.end());
  double reach = 0.0;
  const double gap = 1e-9 * std::max(1.0, total);
  for (const auto& [lo, hi] : iv) {
    if (lo > reach + gap) return false;
    reach = std::max(reach, hi);
  }
  return reach >= total - gap;
}

}  // namespace

CurveFreeSpace curve_free_space(const PolyCurve& f, const PolyCurve& g, double eps, const Tolerance& tol) {
  require_valid(f);
  require_valid(g);
  CurveFreeSpace fs;
  fs.eps = eps;
  fs.n = f.segments();
  fs.m = g.segments();
  const double r = effective(eps, tol);
  fs.vertical.assign(fs.n + 1, std::vector<FreeInterval>(fs.m));
  fs.horizontal.assign(fs.n, std::vector<FreeInterval>(fs.m + 1));
  for (int i = 0; i <= fs.n; ++i)
    for (int j = 0; j < fs.m; ++j)
      fs.vertical[i][j] = free_interval(f.vertices[i], g.vertices[j], g.vertices[j + 1], r);
  for (int i = 0; i < fs.n; ++i)
    for (int j = 0; j <= fs.m; ++j)
      fs.horizontal[i][j] = free_interval(g.vertices[j], f.vertices[i], f.vertices[i + 1], r);
  return fs;
}

bool curve_decide_frechet(const PolyCurve& f, const PolyCurve& g, double eps, const Tolerance& tol) {
  if (!(eps >= 0.0)) throw InputError("curve decide: eps must be nonnegative");
  const CurveFreeSpace fs = curve_free_space(f, g, eps, tol);
  const double r = effective(eps, tol);
  if (distance(f.vertices.front(), g.vertices.front()) > r || distance(f.vertices.back(), g.vertices.back()) > r)
    return false;
  const int n = fs.n, m = fs.m;
  // reachable parts of the vertical (left) and horizontal (bottom) cell boundaries
  std::vector<std::vector<FreeInterval>> lr(n + 1, std::vector<FreeInterval>(m));
  std::vector<std::vector<FreeInterval>> br(n, std::vector<FreeInterval>(m + 1));
  for (int j = 0; j < m; ++j) {
    const FreeInterval& iv = fs.vertical[0][j];
    if (iv.empty() || iv.lo > 0.0) break;
    lr[0][j] = iv;
    if (iv.hi < 1.0) break;
  }
  for (int i = 0; i < n; ++i) {
    const FreeInterval& iv = fs.horizontal[i][0];
    if (iv.empty() || iv.lo > 0.0) break;
    br[i][0] = iv;
    if (iv.hi < 1.0) break;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const FreeInterval& left = lr[i][j];
      const FreeInterval& bottom = br[i][j];
      const FreeInterval& right = fs.vertical[i + 1][j];
      const FreeInterval& top = fs.horizontal[i][j + 1];
      if (!bottom.empty())
        lr[i + 1][j] = right;
      else if (!left.empty() && !right.empty() && std::max(left.lo, right.lo) <= right.hi)
        lr[i + 1][j] = {std::max(left.lo, right.lo), right.hi};
      if (!left.empty())
        br[i][j + 1] = top;
      else if (!bottom.empty() && !top.empty() && std::max(bottom.lo, top.lo) <= top.hi)
        br[i][j + 1] = {std::max(bottom.lo, top.lo), top.hi};
    }
  return (!lr[n][m - 1].empty() && lr[n][m - 1].hi >= 1.0) || (!br[n - 1][m].empty() && br[n - 1][m].hi >= 1.0);
}

bool curve_decide_weak(const PolyCurve& f, const PolyCurve& g, double eps, const Tolerance& tol) {
  if (!(eps >= 0.0)) throw InputError("curve decide: eps must be nonnegative");
  require_valid(f);
  require_valid(g);
  const int n = f.segments(), m = g.segments();
  const double r = effective(eps, tol);
  auto seg_f = [&](int i) { return Segment3{f.vertices[i], f.vertices[i + 1]}; };
  auto seg_g = [&](int j) { return Segment3{g.vertices[j], g.vertices[j + 1]}; };
  std::vector<char> free(n * m, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) free[i * m + j] = dist_segment_segment(seg_f(i), seg_g(j)) <= r;
  DSU dsu(n * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      if (!free[i * m + j]) continue;
      if (i + 1 < n && free[(i + 1) * m + j] && dist_point_segment(f.vertices[i + 1], seg_g(j)) <= r)
        dsu.unite(i * m + j, (i + 1) * m + j);
      if (j + 1 < m && free[i * m + j + 1] && dist_point_segment(g.vertices[j + 1], seg_f(i)) <= r)
        dsu.unite(i * m + j, i * m + j + 1);
    }
  std::vector<int> roots;
  for (int c = 0; c < n * m; ++c)
    if (free[c] && dsu.find(c) == c) roots.push_back(c);
  for (int root : roots) {
    std::vector<std::pair<double, double>> pf, pg;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        if (!free[i * m + j] || dsu.find(i * m + j) != root) continue;
        const FreeInterval a = segment_projection(f.vertices[i], f.vertices[i + 1], g.vertices[j], g.vertices[j + 1], r);
        const FreeInterval b = segment_projection(g.vertices[j], g.vertices[j + 1], f.vertices[i], f.vertices[i + 1], r);
        if (!a.empty()) pf.push_back({i + a.lo, i + a.hi});
        if (!b.empty()) pg.push_back({j + b.lo, j + b.hi});
      }
    if (covers(pf, n) && covers(pg, m)) return true;
  }
  return false;
}

double curve_compute(const PolyCurve& f, const PolyCurve& g, CurveVariant variant, const Tolerance& tol) {
  require_valid(f);
  require_valid(g);
  tol.check();
  const Tolerance fine = tol.scaled(0.01);
  auto dec = [&](double e) {
    return variant == CurveVariant::Frechet ? curve_decide_frechet(f, g, e, fine) : curve_decide_weak(f, g, e, fine);
  };
  double hi = 0.0;
  for (const auto& a : f.vertices)
    for (const auto& b : g.vertices) hi = std::max(hi, distance(a, b));
  if (dec(0.0)) return 0.0;
  double lo = 0.0;
  while (!tol_equal(lo, hi, fine)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (dec(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace frechet

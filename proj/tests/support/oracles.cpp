#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace frechet::testing {

std::vector<Vec3> triangle_lattice(const Triangle3& t, int k) {
  std::vector<Vec3> out;
  for (int i = 0; i <= k; ++i)
    for (int j = 0; i + j <= k; ++j) {
      const double a = static_cast<double>(i) / k, b = static_cast<double>(j) / k;
      out.push_back(t.a + a * (t.b - t.a) + b * (t.c - t.a));
    }
  return out;
}

double sampled_dist_point_triangle(Vec3 p, const Triangle3& t, int k) {
  double best = 1e300;
  for (const Vec3& q : triangle_lattice(t, k)) best = std::min(best, distance(p, q));
  return best;
}

double sampled_dist_segment_triangle(const Segment3& s, const Triangle3& t, int segment_samples, int k) {
  const auto lat = triangle_lattice(t, k);
  double best = 1e300;
  for (int i = 0; i < segment_samples; ++i) {
    const double u = segment_samples == 1 ? 0.5 : static_cast<double>(i) / (segment_samples - 1);
    const Vec3 p = s.a + u * (s.b - s.a);
    for (const Vec3& q : lat) best = std::min(best, distance(p, q));
  }
  return best;
}

double sampled_dist_triangle_triangle(const Triangle3& a, const Triangle3& b, int k) {
  const auto la = triangle_lattice(a, k), lb = triangle_lattice(b, k);
  double best = 1e300;
  for (const Vec3& p : la)
    for (const Vec3& q : lb) best = std::min(best, distance(p, q));
  return best;
}

std::vector<double> bisection_roots(const Polynomial& p, double lo, double hi, int subintervals) {
  std::vector<double> out;
  double x0 = lo, f0 = p(lo);
  if (f0 == 0.0) out.push_back(lo);
  for (int i = 1; i <= subintervals; ++i) {
    const double x1 = lo + (hi - lo) * i / subintervals;
    const double f1 = p(x1);
    if (f1 == 0.0) {
      out.push_back(x1);
    } else if (f0 != 0.0 && (f0 < 0) != (f1 < 0)) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::fabs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = p(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm < 0) == (fa < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      out.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

namespace {

std::vector<Vec3> grid_images(const Surface& s, int grid) {
  std::vector<Vec3> out(grid * grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) out[i * grid + j] = eval(s, {(i + 0.5) / grid, (j + 0.5) / grid});
  return out;
}

int find_root(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

}  // namespace

bool raster_decide(const Surface& f, const Surface& g, double eps, int grid) {
  const auto F = grid_images(f, grid), G = grid_images(g, grid);
  const int n2 = grid * grid, n4 = n2 * n2;
  std::vector<char> free(n4);
  for (int a = 0; a < n2; ++a)
    for (int b = 0; b < n2; ++b) free[a * n2 + b] = distance(F[a], G[b]) <= eps;
  std::vector<int> parent(n4);
  std::iota(parent.begin(), parent.end(), 0);
  const int stride[4] = {grid * n2, n2, grid, 1};
  for (int c = 0; c < n4; ++c) {
    if (!free[c]) continue;
    const int coord[4] = {c / stride[0], (c / stride[1]) % grid, (c / stride[2]) % grid, c % grid};
    for (int d = 0; d < 4; ++d) {
      if (coord[d] + 1 >= grid || !free[c + stride[d]]) continue;
      parent[find_root(parent, c)] = find_root(parent, c + stride[d]);
    }
  }
  std::map<int, std::pair<std::vector<char>, std::vector<char>>> proj;
  for (int c = 0; c < n4; ++c) {
    if (!free[c]) continue;
    auto& pr = proj[find_root(parent, c)];
    if (pr.first.empty()) pr = {std::vector<char>(n2, 0), std::vector<char>(n2, 0)};
    pr.first[c / n2] = 1;
    pr.second[c % n2] = 1;
  }
  for (const auto& [root, pr] : proj) {
    (void)root;
    if (std::all_of(pr.first.begin(), pr.first.end(), [](char x) { return x; }) &&
        std::all_of(pr.second.begin(), pr.second.end(), [](char x) { return x; }))
      return true;
  }
  return false;
}

double raster_margin(const Surface& f, const Surface& g, int grid) {
  return 2.0 * (std::sqrt(2.0) / grid) * (lipschitz_constant(f) + lipschitz_constant(g));
}

CoverageSample mc_covered(const Triangle3& target, const std::vector<Triangle3>& partners, double eps, int samples,
                          std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CoverageSample r;
  r.min_margin = 1e300;
  const std::array<Vec3, 3> corner{target.a, target.b, target.c};
  const int on_edges = samples / 10;
  for (int i = 0; i < samples; ++i) {
    Vec3 p;
    if (i < 3) {
      p = corner[i];
    } else if (i < 3 + on_edges) {
      const int e = i % 3;
      p = corner[e] + u(rng) * (corner[(e + 1) % 3] - corner[e]);
    } else {
      double a = u(rng), b = u(rng);
      if (a + b > 1) {
        a = 1 - a;
        b = 1 - b;
      }
      p = target.a + a * (target.b - target.a) + b * (target.c - target.a);
    }
    double d = 1e300;
    for (const auto& t : partners) d = std::min(d, dist_point_triangle(p, t));
    r.min_margin = std::min(r.min_margin, std::fabs(d - eps));
    if (d > eps) r.covered = false;
  }
  return r;
}

std::vector<double> scan_equidistant_segment(const Segment3& s, const Triangle3& t1, const Triangle3& t2,
                                             int samples, std::vector<char>* tie_end) {
  auto point = [&](double u) { return s.a + u * (s.b - s.a); };
  // sign of d1 - d2, with differences at rounding level counted as ties
  auto sign = [&](double u) {
    const double d = dist_point_triangle(point(u), t1) - dist_point_triangle(point(u), t2);
    return d > 1e-12 ? 1 : d < -1e-12 ? -1 : 0;
  };
  std::vector<double> out;
  double u0 = 0.0;
  int s0 = sign(0.0);
  if (tie_end) tie_end->clear();
  if (s0 == 0) {
    out.push_back(dist_point_triangle(s.a, t1));
    if (tie_end) tie_end->push_back(1);
  }
  for (int i = 1; i <= samples; ++i) {
    const double u1 = static_cast<double>(i) / samples;
    const int s1 = sign(u1);
    if (s1 != s0) {
      double a = u0, b = u1;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        (sign(m) == s0 ? a : b) = m;
      }
      out.push_back(dist_point_triangle(point(0.5 * (a + b)), t1));
      if (tie_end) tie_end->push_back(s0 == 0 || s1 == 0);
    }
    u0 = u1;
    s0 = s1;
  }
  return out;
}

bool scan_equidistant_triangle(const Triangle3& target, const Triangle3& a, const Triangle3& b, const Triangle3& c,
                               double value, int k, double slack) {
  for (const Vec3& p : triangle_lattice(target, k)) {
    const double da = dist_point_triangle(p, a), db = dist_point_triangle(p, b), dc = dist_point_triangle(p, c);
    const double hi = std::max({da, db, dc}), lo = std::min({da, db, dc});
    if (hi - lo <= slack && std::fabs(hi - value) <= slack) return true;
  }
  return false;
}

double discrete_frechet(const std::vector<Vec3>& p, const std::vector<Vec3>& q) {
  const std::size_t n = p.size(), m = q.size();
  std::vector<double> prev(m), cur(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = distance(p[i], q[j]);
      if (i == 0 && j == 0)
        cur[j] = d;
      else if (i == 0)
        cur[j] = std::max(cur[j - 1], d);
      else if (j == 0)
        cur[j] = std::max(prev[j], d);
      else
        cur[j] = std::max(std::min({prev[j], prev[j - 1], cur[j - 1]}), d);
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

std::vector<Vec3> refine(const PolyCurve& c, int k) {
  std::vector<Vec3> out;
  for (int i = 0; i < c.segments(); ++i)
    for (int s = 0; s < k; ++s) out.push_back(c.at(i + static_cast<double>(s) / k));
  out.push_back(c.vertices.back());
  return out;
}

namespace {

std::set<std::pair<int, int>> boundary_edge_set(const ParamTriangulation& t) {
  std::map<std::pair<int, int>, int> count;
  for (const auto& tri : t.triangles)
    for (int i = 0; i < 3; ++i) {
      const int a = tri[i], b = tri[(i + 1) % 3];
      ++count[{std::min(a, b), std::max(a, b)}];
    }
  std::set<std::pair<int, int>> out;
  for (const auto& [e, c] : count)
    if (c == 1) out.insert(e);
  return out;
}

std::vector<std::set<int>> neighbours(const ParamTriangulation& t) {
  std::vector<std::set<int>> adj(t.vertices.size());
  for (const auto& tri : t.triangles)
    for (int i = 0; i < 3; ++i) {
      adj[tri[i]].insert(tri[(i + 1) % 3]);
      adj[tri[(i + 1) % 3]].insert(tri[i]);
    }
  return adj;
}

std::vector<std::pair<int, int>> edge_list(const ParamTriangulation& t) {
  std::set<std::pair<int, int>> s;
  for (const auto& tri : t.triangles)
    for (int i = 0; i < 3; ++i) {
      const int a = tri[i], b = tri[(i + 1) % 3];
      s.insert({std::min(a, b), std::max(a, b)});
    }
  return {s.begin(), s.end()};
}

}  // namespace

long brute_force_candidates(const Surface& km, const Surface& ln, int cap, long limit,
                            std::vector<MeshHomeoCandidate>* out) {
  const auto ladj = neighbours(ln.param);
  const auto lbnd = boundary_edge_set(ln.param);
  const auto kbnd = boundary_edge_set(km.param);
  const auto kedges = edge_list(km.param);
  const int nl = static_cast<int>(ln.param.vertices.size());
  // all simple directed paths of length 1..cap
  std::vector<std::vector<int>> paths;
  std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& p) {
    if (p.size() >= 2) paths.push_back(p);
    if (static_cast<int>(p.size()) - 1 >= cap) return;
    for (int w : ladj[p.back()]) {
      if (std::find(p.begin(), p.end(), w) != p.end()) continue;
      p.push_back(w);
      grow(p);
      p.pop_back();
    }
  };
  for (int s = 0; s < nl; ++s) {
    std::vector<int> p{s};
    grow(p);
  }
  auto on_boundary = [&](const std::vector<int>& p) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (!lbnd.count({std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1])})) return false;
    return true;
  };
  std::vector<std::vector<const std::vector<int>*>> options(kedges.size());
  for (std::size_t e = 0; e < kedges.size(); ++e) {
    const bool kb = kbnd.count(kedges[e]) > 0;
    for (const auto& p : paths)
      if (on_boundary(p) == kb) options[e].push_back(&p);
  }
  std::vector<int> phi(km.param.vertices.size(), -1), refs(km.param.vertices.size(), 0);
  std::vector<int> used_by(nl, -1);
  std::vector<const std::vector<int>*> pick(kedges.size());
  long count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t e) {
    if (count >= limit) return;
    if (e == kedges.size()) {
      ++count;
      if (out) {
        MeshHomeoCandidate c;
        for (auto* p : pick) c.chains.push_back(*p);
        c.vertex_map = phi;
        out->push_back(c);
      }
      return;
    }
    const int u = kedges[e].first, v = kedges[e].second;
    for (const auto* p : options[e]) {
      const int pu = p->front(), pv = p->back();
      auto fits = [&](int kv, int lv) {
        if (phi[kv] >= 0) return phi[kv] == lv;
        return used_by[lv] < 0;
      };
      if (!fits(u, pu) || !fits(v, pv)) continue;
      if (phi[u] < 0 && phi[v] < 0 && pu == pv) continue;
      for (int kv : {u, v}) {
        const int lv = kv == u ? pu : pv;
        if (refs[kv]++ == 0) {
          phi[kv] = lv;
          used_by[lv] = kv;
        }
      }
      pick[e] = p;
      rec(e + 1);
      for (int kv : {u, v})
        if (--refs[kv] == 0) {
          used_by[phi[kv]] = -1;
          phi[kv] = -1;
        }
      if (count >= limit) return;
    }
  };
  rec(0);
  return count;
}

bool embedding_check(const MeshHomeoCandidate& c, const Surface& km, const Surface& ln) {
  const auto& K = km.param;
  const auto& L = ln.param;
  const auto kedges = edge_list(K);
  const auto ladj = neighbours(L);
  const auto lbnd = boundary_edge_set(L);
  const auto kbnd = boundary_edge_set(K);
  if (c.chains.size() != kedges.size()) return false;
  const int nl = static_cast<int>(L.vertices.size());
  std::vector<int> phi(K.vertices.size(), -1);
  for (std::size_t e = 0; e < kedges.size(); ++e) {
    const auto& ch = c.chains[e];
    if (ch.size() < 2) return false;
    for (std::size_t i = 0; i < ch.size(); ++i) {
      if (ch[i] < 0 || ch[i] >= nl) return false;
      if (i + 1 < ch.size() && !ladj[ch[i]].count(ch[i + 1])) return false;
    }
    const int ends[2] = {kedges[e].first, kedges[e].second};
    const int imgs[2] = {ch.front(), ch.back()};
    for (int s = 0; s < 2; ++s) {
      if (phi[ends[s]] >= 0 && phi[ends[s]] != imgs[s]) return false;
      phi[ends[s]] = imgs[s];
    }
  }
  // vertex usage: images distinct, chain interiors distinct from everything else
  std::vector<int> usage(nl, 0);
  for (int v : phi) {
    if (v < 0) return false;
    if (usage[v]++) return false;
  }
  for (const auto& ch : c.chains)
    for (std::size_t i = 1; i + 1 < ch.size(); ++i)
      if (usage[ch[i]]++) return false;
  // rotation systems, comparing cyclic sequences of angles around each vertex
  auto angle = [](Vec2 from, Vec2 to) { return std::atan2(to.y - from.y, to.x - from.x); };
  for (std::size_t v = 0; v < K.vertices.size(); ++v) {
    std::vector<std::pair<double, int>> kside, lside;
    for (std::size_t e = 0; e < kedges.size(); ++e) {
      const auto [a, b] = kedges[e];
      if (a != static_cast<int>(v) && b != static_cast<int>(v)) continue;
      const int other = a == static_cast<int>(v) ? b : a;
      kside.push_back({angle(K.vertices[v], K.vertices[other]), static_cast<int>(e)});
      const auto& ch = c.chains[e];
      const int next = a == static_cast<int>(v) ? ch[1] : ch[ch.size() - 2];
      lside.push_back({angle(L.vertices[phi[v]], L.vertices[next]), static_cast<int>(e)});
    }
    std::sort(kside.begin(), kside.end());
    std::sort(lside.begin(), lside.end());
    std::vector<int> ko, lo;
    for (auto& p : kside) ko.push_back(p.second);
    for (auto& p : lside) lo.push_back(p.second);
    bool match = false;
    for (std::size_t r = 0; r < ko.size() && !match; ++r) {
      std::vector<int> rot(ko.begin() + r, ko.end());
      rot.insert(rot.end(), ko.begin(), ko.begin() + r);
      match = rot == lo;
    }
    if (!match) return false;
  }
  // boundary: K's boundary edges, oriented by their triangle, become a closed walk over L's
  // boundary edges in L's triangle orientation, each used once
  std::set<std::pair<int, int>> l_directed;
  for (const auto& tri : L.triangles)
    for (int i = 0; i < 3; ++i) {
      const int a = tri[i], b = tri[(i + 1) % 3];
      if (lbnd.count({std::min(a, b), std::max(a, b)})) l_directed.insert({a, b});
    }
  std::set<std::pair<int, int>> walked;
  for (const auto& tri : K.triangles)
    for (int i = 0; i < 3; ++i) {
      const int a = tri[i], b = tri[(i + 1) % 3];
      if (!kbnd.count({std::min(a, b), std::max(a, b)})) continue;
      const auto it = std::find(kedges.begin(), kedges.end(), std::pair{std::min(a, b), std::max(a, b)});
      std::vector<int> ch = c.chains[it - kedges.begin()];
      if (a > b) std::reverse(ch.begin(), ch.end());
      for (std::size_t k = 0; k + 1 < ch.size(); ++k) {
        const std::pair<int, int> d{ch[k], ch[k + 1]};
        if (!l_directed.count(d) || !walked.insert(d).second) return false;
      }
    }
  if (walked != l_directed) return false;
  // interior edges must not run entirely along the boundary
  for (std::size_t e = 0; e < kedges.size(); ++e) {
    if (kbnd.count(kedges[e])) continue;
    const auto& ch = c.chains[e];
    bool all = true;
    for (std::size_t k = 0; k + 1 < ch.size(); ++k)
      all = all && lbnd.count({std::min(ch[k], ch[k + 1]), std::max(ch[k], ch[k + 1])});
    if (all) return false;
  }
  return true;
}

double brute_force_delta(const Surface& fm, const Surface& gn, const std::vector<std::vector<int>>& regions) {
  double best = 0.0;
  for (std::size_t t = 0; t < fm.param.triangles.size(); ++t)
    for (int v : fm.param.triangles[t])
      for (int l : regions[t])
        for (int w : gn.param.triangles[l]) best = std::max(best, distance(fm.image[v], gn.image[w]));
  return best;
}

}  // namespace frechet::testing

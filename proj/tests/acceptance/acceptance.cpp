// Runs the acceptance checks and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "frechet/coverage.hpp"
#include "frechet/curve.hpp"
#include "frechet/semi_frechet.hpp"
#include "frechet/weak_frechet.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace frechet;
using namespace frechet::testing;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int random_size(std::mt19937_64& rng, int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); }

Outcome translation_exactness() {
  Outcome o;
  double worst = 0, slowest = 0;
  for (double h : {0.1, 0.5, 1.0}) {
    const Surface f = flat_square(), g = translated(f, {0, 0, h});
    for (SearchMode mode : {SearchMode::ExactCriticals, SearchMode::Bisection}) {
      const auto t0 = std::chrono::steady_clock::now();
      const double d = compute(SurfacePair(f, g), mode).distance;
      const double t = seconds_since(t0);
      worst = std::max(worst, std::fabs(d - h));
      slowest = std::max(slowest, t);
      if (std::fabs(d - h) > 1e-9) o.fail(fmt("h=%g mode %g: got %.12g", h, mode == SearchMode::Bisection, d));
      if (t >= 1.0) o.fail(fmt("h=%g took %.3fs", h, t));
    }
  }
  if (o.pass) o.detail = fmt("max error %.2e, slowest %.3fs", worst, slowest);
  return o;
}

Outcome identity_zero(std::mt19937_64& rng) {
  Outcome o;
  for (int it = 0; it < 10; ++it) {
    const Surface s = random_surface(rng, random_size(rng, 2, 10));
    const SurfacePair p(s, s);
    const double d = compute(p, SearchMode::ExactCriticals).distance;
    if (std::fabs(d) > 1e-12) o.fail(fmt("instance %g: distance %.3e", it, d));
    if (!decide(p, 0.0)) o.fail(fmt("instance %g: decide(0) false", it));
  }
  if (o.pass) o.detail = "10 instances";
  return o;
}

Outcome sandwich(std::mt19937_64& rng) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double min_gap = 1e300;
  for (int it = 0; it < 100; ++it) {
    const Surface f = random_surface(rng, random_size(rng, 4, 10));
    const Surface g = random_surface(rng, random_size(rng, 4, 10));
    const double d = compute(SurfacePair(f, g), SearchMode::ExactCriticals).distance;
    const double lower = hausdorff_sampled(f, g, 0.05).lower;
    min_gap = std::min(min_gap, d - lower);
    if (lower - 1e-6 > d) o.fail(fmt("instance %g: hausdorff lower %.9g > distance %.9g", it, lower, d));
  }
  const double t = seconds_since(t0);
  if (t >= 300) o.fail(fmt("took %.1fs", t));
  if (o.pass) o.detail = fmt("min(distance - lower) %.3e, %.1fs", min_gap, t);
  return o;
}

Outcome decision_monotonicity(std::mt19937_64& rng) {
  Outcome o;
  for (int it = 0; it < 25; ++it) {
    const SurfacePair p(random_surface(rng, random_size(rng, 3, 8)), random_surface(rng, random_size(rng, 3, 8)));
    const double top = image_diameter(p);
    std::vector<double> eps(20);
    std::uniform_real_distribution<double> u(0.0, top);
    for (double& e : eps) e = u(rng);
    std::sort(eps.begin(), eps.end());
    bool seen = false;
    for (double e : eps) {
      const bool d = decide(p, e);
      if (seen && !d) o.fail(fmt("instance %g: true then false at eps %.9g", it, e));
      seen = seen || d;
    }
  }
  if (o.pass) o.detail = "25 x 20 probes";
  return o;
}

Outcome subgraph_monotonicity(std::mt19937_64& rng) {
  Outcome o;
  for (int it = 0; it < 25; ++it) {
    const SurfacePair p(random_surface(rng, random_size(rng, 3, 8)), random_surface(rng, random_size(rng, 3, 8)));
    const double top = image_diameter(p);
    std::uniform_real_distribution<double> u(0.0, 0.6 * top);
    double e1 = u(rng), e2 = u(rng);
    if (e1 > e2) std::swap(e1, e2);
    const FreeSpaceGraph g1 = build_graph(p, e1), g2 = build_graph(p, e2);
    for (const CellId& c : g1.vertices)
      if (g2.find(c) < 0) o.fail(fmt("instance %g: vertex missing", it));
    for (const auto& [a, b] : g1.edges) {
      const int x = g2.find(g1.vertices[a]), y = g2.find(g1.vertices[b]);
      const std::pair<int, int> e{std::min(x, y), std::max(x, y)};
      if (x < 0 || y < 0 || !std::binary_search(g2.edges.begin(), g2.edges.end(), e))
        o.fail(fmt("instance %g: edge missing", it));
    }
  }
  if (o.pass) o.detail = "25 instances";
  return o;
}

Outcome oracle_equivalence(std::mt19937_64& rng) {
  Outcome o;
  int probes = 0;
  for (int it = 0; it < 50; ++it) {
    const Surface f = random_surface(rng, random_size(rng, 2, 5), 0.15);
    const Surface g = perturbed(rng, f, {0.3, -0.2, 0.8}, 0.2);
    const SurfacePair p(f, g);
    const double delta = compute(p, SearchMode::ExactCriticals).distance;
    const double margin = raster_margin(f, g);
    for (double eps : {0.0, delta - 2 * margin, delta - 1.1 * margin, delta + 1.1 * margin, delta + 2 * margin}) {
      if (eps < 0 || std::fabs(eps - delta) <= margin) continue;
      ++probes;
      if (decide(p, eps) != raster_decide(f, g, eps))
        o.fail(fmt("instance %g: disagreement at eps %.9g (distance %.9g)", it, eps, delta));
    }
  }
  if (probes == 0) o.fail("no probe outside the oracle margin");
  if (o.pass) o.detail = fmt("%g probes, 0 disagreements", probes);
  return o;
}

Outcome critical_membership(std::mt19937_64& rng) {
  Outcome o;
  const Tolerance ten = Tolerance{}.scaled(10.0);
  for (int it = 0; it < 50; ++it) {
    const SurfacePair p(random_surface(rng, random_size(rng, 2, 6)), random_surface(rng, random_size(rng, 2, 6)));
    const WeakFrechetResult exact = compute(p, SearchMode::ExactCriticals);
    const WeakFrechetResult bis = compute(p, SearchMode::Bisection);
    if (!exact.matched || !tol_equal(exact.distance, exact.matched->value, ten))
      o.fail(fmt("instance %g: distance %.12g has no critical value", it, exact.distance));
    if (!tol_equal(exact.distance, bis.distance, ten))
      o.fail(fmt("instance %g: exact %.12g vs bisection %.12g", it, exact.distance, bis.distance));
  }
  if (o.pass) o.detail = "50 instances";
  return o;
}

Outcome coverage_vs_mc(std::mt19937_64& rng) {
  Outcome o;
  std::uniform_real_distribution<double> u(-1.0, 1.0), ue(0.05, 0.45);
  int compared = 0, covered = 0, attempts = 0;
  while (compared < 100 && attempts < 1000) {
    ++attempts;
    Triangle3 target;
    do target = {{u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}};
    while (target.area() <= 0.1);
    std::vector<Triangle3> partners;
    const int k = 1 + static_cast<int>(rng() % 4);
    while (static_cast<int>(partners.size()) < k) {
      auto jitter = [&](Vec3 p) { return p + Vec3{0.4 * u(rng), 0.4 * u(rng), 0.4 * u(rng)}; };
      const Triangle3 t{jitter(target.a), jitter(target.b), jitter(target.c)};
      if (t.area() > 0.02) partners.push_back(t);
    }
    const double eps = ue(rng);
    const CoverageSample mc = mc_covered(target, partners, eps, 10000, rng);
    if (mc.min_margin <= 1e-6) continue;
    ++compared;
    covered += mc.covered;
    TriangleArrangement arr;
    if (triangle_covered(target, partners, eps, {}, &arr) != mc.covered) {
      // report how far outside the neighborhoods the sweep's uncovered faces reach
      double excess = -1e300;
      for (const auto& face : arr.faces) {
        if (face.covered) continue;
        double d = 1e300;
        for (const auto& t : partners) d = std::min(d, dist_point_triangle(arr.frame.lift(face.sample), t));
        excess = std::max(excess, d - eps);
      }
      o.fail(fmt("case %g: sweep says %g, sampling says %g", compared, !mc.covered, mc.covered) +
             (mc.covered ? fmt(" (uncovered face sample %.3e beyond eps)", excess) : ""));
    }
  }
  if (compared < 100) o.fail(fmt("only %g cases with margin", compared));
  if (o.pass) o.detail = fmt("%g cases, %g covered", compared, covered);
  return o;
}

Outcome curve_regression() {
  Outcome o;
  const PolyCurve a{2, {{0, 0, 0}, {1, 0, 0}}}, b{2, {{0, 1, 0}, {1, 1, 0}}};
  const double fr = curve_compute(a, b, CurveVariant::Frechet), wk = curve_compute(a, b, CurveVariant::Weak);
  if (std::fabs(fr - 1) > 1e-9 || std::fabs(wk - 1) > 1e-9) o.fail(fmt("parallel: %.12g %.12g", fr, wk));

  const PolyCurve seg{2, {{0, 0, 0}, {4, 0, 0}}};
  const PolyCurve zig{2, {{0, 0, 0}, {3, 0.2, 0}, {1, 0.2, 0}, {4, 0, 0}}};
  const double zs = curve_compute(seg, zig, CurveVariant::Frechet), zw = curve_compute(seg, zig, CurveVariant::Weak);
  if (!(zw < zs)) o.fail(fmt("zigzag: weak %.9g strong %.9g", zw, zs));

  double prev = 1e300;
  std::string dp;
  for (int k : {1, 2, 4, 8}) {
    const double d = discrete_frechet(refine(seg, k), refine(zig, k));
    dp += fmt(k == 1 ? "%.4g" : " %.4g", d);
    if (d > prev + 1e-12) o.fail("discrete bounds increase: " + dp);
    if (d < zs - 1e-9) o.fail("discrete bound below the Frechet distance");
    prev = d;
  }
  if (o.pass) o.detail = fmt("zigzag weak %.4g < strong %.4g; ", zw, zs) + "DP " + dp;
  return o;
}

Outcome semi_stream(std::mt19937_64& rng) {
  Outcome o;
  const Surface f = flat_square();
  Budget b;
  b.max_level = 3;
  b.max_candidates = 1;
  b.wall_clock_seconds = 0;
  const auto s = semi_compute_stream(f, f, b);
  std::vector<bool> level_seen(4, false);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0 && !(s[i].value < s[i - 1].value)) o.fail("stream not strictly decreasing");
    const Surface km = barycentric_subdivide(f, s[i].m);
    const double bound = lipschitz_constant(km) * mesh_size(km.param);
    if (s[i].value > bound * (1 + 1e-12)) o.fail(fmt("level %g: %.9g above %.9g", s[i].m, s[i].value, bound));
    if (s[i].value < 0) o.fail("negative bound");
    if (s[i].m == s[i].n) level_seen[s[i].m] = true;
  }
  for (int m = 0; m <= 3; ++m)
    if (!level_seen[m]) o.fail(fmt("no identity bound at level %g", m));
  std::string head;
  for (const auto& x : s) head += fmt(head.empty() ? "%.4g" : " %.4g", x.value);

  for (int it = 0; it < 10; ++it) {
    const Surface a = random_surface(rng, 2), c = random_surface(rng, random_size(rng, 2, 3));
    Budget rb;
    rb.max_level = 1;
    rb.max_candidates = 50;
    rb.wall_clock_seconds = 0;
    const double d = compute(SurfacePair(a, c), SearchMode::ExactCriticals).distance;
    for (const auto& x : semi_compute_stream(a, c, rb))
      if (x.value < d - 1e-9) o.fail(fmt("pair %g: bound %.9g below distance %.9g", it, x.value, d));
  }
  if (o.pass) o.detail = "square stream " + head;
  return o;
}

Outcome complexity(std::mt19937_64& rng) {
  Outcome o;
  std::vector<double> times;
  const std::vector<int> sizes{8, 16, 32};
  decide(flat_square(), flat_square(), 0.5);
  for (int n : sizes) {
    const Surface f = random_surface(rng, n), g = perturbed(rng, f, {0.1, 0, 0}, 0.1);
    const double top = image_diameter(SurfacePair(f, g));
    int reps = 0;
    double t = 0;
    do {
      const auto t0 = std::chrono::steady_clock::now();
      for (double frac : {0.05, 0.1, 0.2, 0.35, 0.5, 0.8}) decide(f, g, frac * top);
      t += seconds_since(t0);
      ++reps;
    } while (t < 0.5 && reps < 200);
    times.push_back(t / reps);
  }
  auto model = [](double n) { return n * n * n * std::log2(n); };
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    const double allowed = 2.0 * model(sizes[i]) / model(sizes[0]);
    const double ratio = times[i] / times[0];
    if (ratio > allowed) o.fail(fmt("n=%g grows %.1fx, allowed %.1fx", sizes[i], ratio, allowed));
  }
  if (times.back() >= 60) o.fail(fmt("n=32 took %.1fs", times.back()));
  if (o.pass) o.detail = fmt("times %.3gs %.3gs %.3gs", times[0], times[1], times[2]);
  return o;
}

}  // namespace

int main() {
  std::mt19937_64 rng(test_seed());
  const std::vector<std::pair<const char*, std::function<Outcome()>>> checks{
      {"translation exactness", [] { return translation_exactness(); }},
      {"identity zero", [&] { return identity_zero(rng); }},
      {"sandwich inequality", [&] { return sandwich(rng); }},
      {"decision monotonicity", [&] { return decision_monotonicity(rng); }},
      {"subgraph monotonicity", [&] { return subgraph_monotonicity(rng); }},
      {"raster oracle equivalence", [&] { return oracle_equivalence(rng); }},
      {"critical value membership", [&] { return critical_membership(rng); }},
      {"coverage sweep vs sampling", [&] { return coverage_vs_mc(rng); }},
      {"curve regression", [] { return curve_regression(); }},
      {"semi-Frechet stream", [&] { return semi_stream(rng); }},
      {"complexity smoke check", [&] { return complexity(rng); }},
  };
  int failed = 0, index = 0;
  for (const auto& [name, run] : checks) {
    ++index;
    Outcome r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r = run();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    failed += !r.pass;
    std::printf("%s %2d %s (%.1fs): %s\n", r.pass ? "PASS" : "FAIL", index, name, seconds_since(t0), r.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

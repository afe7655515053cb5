#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "frechet/critical_values.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace frechet;
using namespace frechet::testing;

namespace {

bool contains(const std::vector<CriticalValue>& v, double x, CriticalKind kind, double tol = 1e-9) {
  for (const auto& c : v)
    if (std::fabs(c.value - x) <= tol &&
        (c.kind == kind || std::find(c.merged_kinds.begin(), c.merged_kinds.end(), kind) != c.merged_kinds.end()))
      return true;
  return false;
}

// Pyramid over the square: four faces around an apex above the origin.
Surface pyramid() {
  std::vector<Vec3> img;
  for (int i = 0; i < 4; ++i) {
    const double a = M_PI / 4 + M_PI / 2 * (i == 0 ? 2 : i == 1 ? 3 : i == 2 ? 0 : 1);
    img.push_back({1.5 * std::cos(a), 1.5 * std::sin(a), 0.0});
  }
  img.push_back({0, 0, 2});
  return make_surface(3, {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}}, {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}},
                      img);
}

// Flat square in z = 0 with the origin inside one of its triangles, shifted by dx.
Surface plane_target(double dx) {
  return make_surface(3, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}},
                      {{-0.8 + dx, -1.2, 0}, {1.2 + dx, -1.2, 0}, {1.2 + dx, 0.8, 0}, {-0.8 + dx, 0.8, 0}});
}

std::vector<CriticalValue> of_kind(const std::vector<CriticalValue>& v, CriticalKind k) {
  std::vector<CriticalValue> out;
  for (const auto& c : v)
    if (c.kind == k) out.push_back(c);
  return out;
}

}  // namespace

TEST(C1, TranslateHasHAsVertexAndParallelValue) {
  for (double h : {0.1, 0.5, 1.0}) {
    const Surface f = flat_square();
    const SurfacePair p(f, translated(f, {0, 0, h}));
    const auto c1 = critical_values_C1(p);
    const auto it = std::find_if(c1.begin(), c1.end(), [&](const CriticalValue& c) { return std::fabs(c.value - h) < 1e-12; });
    ASSERT_NE(it, c1.end());
    const auto& k = it->merged_kinds;
    EXPECT_NE(std::find(k.begin(), k.end(), CriticalKind::T2a), k.end());
    EXPECT_NE(std::find(k.begin(), k.end(), CriticalKind::T2d), k.end());
  }
}

TEST(C1, IdenticalSurfacesContainZero) {
  std::mt19937_64 rng(test_seed());
  const Surface s = random_surface(rng, 5);
  const auto c1 = critical_values_C1(SurfacePair(s, s));
  ASSERT_FALSE(c1.empty());
  EXPECT_EQ(c1.front().value, 0.0);
}

TEST(C1, SortedDeduplicatedNonnegative) {
  std::mt19937_64 rng(test_seed() + 1);
  const Tolerance tol;
  const auto c1 = critical_values_C1(SurfacePair(random_surface(rng, 6), random_surface(rng, 5)), tol);
  for (std::size_t i = 0; i < c1.size(); ++i) {
    EXPECT_GE(c1[i].value, 0.0);
    if (i) {
      EXPECT_GT(c1[i].value - c1[i - 1].value, 10 * tol.slack(c1[i].value, c1[i - 1].value));
    }
  }
}

TEST(C1, T2bMatchesEdgeScan) {
  std::mt19937_64 rng(test_seed() + 2);
  int checked = 0;
  for (int it = 0; it < 4; ++it) {
    const Surface f = random_surface(rng, 4), g = random_surface(rng, 4);
    const SurfacePair p(f, g);
    const auto t2b = of_kind(critical_values_C1(p), CriticalKind::T2b);
    for (const auto& c : t2b) {
      const bool k = c.side == 'K';
      const Segment3 s = k ? p.f_edges()[c.simplices[0]] : p.g_edges()[c.simplices[0]];
      const auto& others = k ? p.g_triangles() : p.f_triangles();
      const Triangle3 &t1 = others[c.simplices[1]], &t2 = others[c.simplices[2]];
      const auto crossings = scan_equidistant_segment(s, t1, t2, 100000);
      bool match = false;
      for (double v : crossings) match = match || std::fabs(v - c.value) <= 1e-4;
      if (!match) {
        // tangential equidistance: no sign change, so look for a near-zero difference
        for (int i = 0; i <= 100000 && !match; ++i) {
          const Vec3 x = s.a + (i / 100000.0) * (s.b - s.a);
          const double d1 = dist_point_triangle(x, t1), d2 = dist_point_triangle(x, t2);
          match = std::fabs(d1 - d2) < 1e-4 && std::fabs(d1 - c.value) < 1e-4;
        }
      }
      EXPECT_TRUE(match) << "T2b value " << c.value;
      if (++checked >= 60) return;
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(C1, EveryEdgeCrossingIsEnumerated) {
  std::mt19937_64 rng(test_seed() + 3);
  const Surface f = random_surface(rng, 4), g = random_surface(rng, 4);
  const SurfacePair p(f, g);
  const auto c1 = critical_values_C1(p);
  int checked = 0;
  for (int e = 0; e < f.edge_count(); ++e)
    for (int a = 0; a < g.triangle_count(); ++a)
      for (int b = a + 1; b < g.triangle_count(); ++b) {
        std::vector<char> tie_end;
        const auto crossings =
            scan_equidistant_segment(p.f_edges()[e], p.g_triangles()[a], p.g_triangles()[b], 20000, &tie_end);
        for (std::size_t i = 0; i < crossings.size(); ++i) {
          const double v = crossings[i], slack = tie_end[i] ? 1e-4 : 1e-6;
          bool found = false;
          for (const auto& c : c1) found = found || std::fabs(c.value - v) <= slack;
          EXPECT_TRUE(found) << "edge " << e << " triangles " << a << "," << b << " value " << v;
          ++checked;
        }
      }
  EXPECT_GT(checked, 0);
}

TEST(C2c, SymmetricConfigurationGivesCentroidDistance) {
  const Surface g = pyramid();
  const Vec3 origin{0, 0, 0};
  const double d = dist_point_triangle(origin, g.image_triangle(0));
  for (int t = 1; t < 4; ++t) ASSERT_NEAR(dist_point_triangle(origin, g.image_triangle(t)), d, 1e-12);
  const SurfacePair p(plane_target(0.0), g);
  const auto c2 = critical_values_2c(p, d - 0.01, d + 0.01);
  EXPECT_TRUE(contains(c2, d, CriticalKind::T2c, 1e-9)) << "expected " << d;
  for (const auto& c : c2) {
    EXPECT_GE(c.value, d - 0.01);
    EXPECT_LE(c.value, d + 0.01);
  }
}

TEST(C2c, NoEquidistantPointInsideTarget) {
  const Surface g = pyramid();
  const double d = dist_point_triangle({0, 0, 0}, g.image_triangle(0));
  const SurfacePair p(plane_target(5.0), g);
  EXPECT_FALSE(contains(critical_values_2c(p, d - 0.01, d + 0.01), d, CriticalKind::T2c, 1e-6));
}

TEST(C2c, RandomValuesMatchGridScan) {
  std::mt19937_64 rng(test_seed() + 4);
  int checked = 0;
  for (int it = 0; it < 6 && checked < 25; ++it) {
    const Surface f = random_surface(rng, 4), g = random_surface(rng, 5);
    const SurfacePair p(f, g);
    const auto c2 = critical_values_2c(p, 0.0, 1.0);
    for (const auto& c : c2) {
      const bool k = c.side == 'K';
      const Triangle3 target = k ? p.f_triangles()[c.simplices[0]] : p.g_triangles()[c.simplices[0]];
      const auto& others = k ? p.g_triangles() : p.f_triangles();
      const double slack = 6 * diameter(target) / 500;
      EXPECT_TRUE(scan_equidistant_triangle(target, others[c.simplices[1]], others[c.simplices[2]],
                                            others[c.simplices[3]], c.value, 500, slack))
          << "T2c value " << c.value;
      if (++checked >= 25) break;
    }
  }
  EXPECT_GT(checked, 5);
}

TEST(C2c, RespectsInterval) {
  std::mt19937_64 rng(test_seed() + 5);
  const SurfacePair p(random_surface(rng, 4), random_surface(rng, 4));
  const auto c2 = critical_values_2c(p, 0.3, 0.6);
  for (std::size_t i = 0; i < c2.size(); ++i) {
    EXPECT_GE(c2[i].value, 0.3 * (1 - 1e-9));
    EXPECT_LE(c2[i].value, 0.6 * (1 + 1e-9));
    if (i) {
      EXPECT_LE(c2[i - 1].value, c2[i].value);
    }
  }
}

TEST(Dedupe, CollapsesNearValues) {
  std::vector<CriticalValue> v{{1.0, CriticalKind::T1, 'K', "", {}, {}},
                               {1.0 + 1e-12, CriticalKind::T2a, 'K', "", {}, {}},
                               {0.5, CriticalKind::T2d, 'L', "", {}, {}}};
  sort_and_dedupe(v, {});
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].value, 0.5);
  EXPECT_EQ(v[1].value, 1.0);
}

TEST(Dedupe, ClosedFormValueSurvives) {
  std::vector<CriticalValue> v{{0.6 - 1.2e-9, CriticalKind::T2b, 'L', "", {}, {}},
                               {0.6, CriticalKind::T2a, 'L', "", {}, {}},
                               {0.6 + 1e-9, CriticalKind::T2c, 'L', "", {}, {}}};
  sort_and_dedupe(v, {});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].value, 0.6);
  EXPECT_EQ(v[0].kind, CriticalKind::T2a);
  EXPECT_EQ(v[0].merged_kinds, (std::vector<CriticalKind>{CriticalKind::T2a, CriticalKind::T2b, CriticalKind::T2c}));
}

TEST(Kinds, Names) {
  EXPECT_STREQ(to_string(CriticalKind::T1), "T1");
  EXPECT_STREQ(to_string(CriticalKind::T2c), "T2c");
}

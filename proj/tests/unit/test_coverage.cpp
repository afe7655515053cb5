#include <gtest/gtest.h>

#include <random>

#include "frechet/coverage.hpp"
#include "frechet/error.hpp"
#include "frechet/weak_frechet.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace frechet;
using namespace frechet::testing;

namespace {

struct Case {
  Triangle3 target;
  std::vector<Triangle3> partners;
  double eps;
};

Case random_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), ue(0.05, 0.45);
  Case c;
  for (;;) {
    c.target = {{u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}};
    if (c.target.area() > 0.1) break;
  }
  const int k = 1 + static_cast<int>(rng() % 4);
  while (static_cast<int>(c.partners.size()) < k) {
    auto jitter = [&](Vec3 p) { return p + Vec3{0.4 * u(rng), 0.4 * u(rng), 0.4 * u(rng)}; };
    const Triangle3 t{jitter(c.target.a), jitter(c.target.b), jitter(c.target.c)};
    if (t.area() > 0.02) c.partners.push_back(t);
  }
  c.eps = ue(rng);
  return c;
}

}  // namespace

TEST(TriangleCovered, SelfCover) {
  std::mt19937_64 rng(test_seed());
  const Surface s = random_surface(rng, 5);
  for (int k = 0; k < s.triangle_count(); ++k) EXPECT_TRUE(triangle_covered(s, s, k, {k}, 0.01));
}

TEST(TriangleCovered, TranslateByOneNotCoveredAtHalf) {
  const Surface f = flat_square(), g = translated(f, {0, 0, 1});
  for (int k = 0; k < 2; ++k) EXPECT_FALSE(triangle_covered(f, g, k, {0, 1}, 0.5));
}

TEST(TriangleCovered, EmptyPartners) {
  const Surface f = flat_square();
  EXPECT_FALSE(triangle_covered(f, f, 0, {}, 1.0));
}

TEST(TriangleCovered, DegenerateTargetRejected) {
  const Triangle3 flat{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  const Triangle3 ok{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  EXPECT_THROW(triangle_covered(flat, {ok}, 0.5), InputError);
}

TEST(TriangleCovered, AgreesWithMonteCarlo) {
  std::mt19937_64 rng(test_seed() + 1);
  int compared = 0, covered = 0, mismatches = 0;
  for (int it = 0; it < 150 && compared < 100; ++it) {
    const Case c = random_case(rng);
    const CoverageSample mc = mc_covered(c.target, c.partners, c.eps, 10000, rng);
    if (mc.min_margin <= 1e-6) continue;
    ++compared;
    covered += mc.covered;
    if (triangle_covered(c.target, c.partners, c.eps) != mc.covered) ++mismatches;
  }
  EXPECT_GE(compared, 100);
  EXPECT_EQ(mismatches, 0);
  EXPECT_GT(covered, 5);
  EXPECT_LT(covered, compared - 5);
}

TEST(TriangleCovered, MonotoneInPartners) {
  std::mt19937_64 rng(test_seed() + 2);
  for (int it = 0; it < 40; ++it) {
    Case c = random_case(rng);
    const bool before = triangle_covered(c.target, c.partners, c.eps);
    c.partners.push_back(random_case(rng).partners[0]);
    if (before) {
      EXPECT_TRUE(triangle_covered(c.target, c.partners, c.eps));
    }
  }
}

TEST(Arrangement, FacesClassifiedByDirectMembership) {
  std::mt19937_64 rng(test_seed() + 3);
  for (int it = 0; it < 30; ++it) {
    const Case c = random_case(rng);
    TriangleArrangement a;
    const bool covered = triangle_covered(c.target, c.partners, c.eps, {}, &a);
    ASSERT_FALSE(a.faces.empty());
    bool all = true;
    for (const auto& f : a.faces) {
      double d = 1e300;
      for (const auto& t : c.partners) d = std::min(d, dist_point_triangle(a.frame.lift(f.sample), t));
      EXPECT_EQ(f.covered, d <= c.eps + 1e-12) << "face sample distance " << d << " eps " << c.eps;
      all = all && f.covered;
    }
    EXPECT_EQ(covered, all);
    EXPECT_LE(a.max_arcs_per_section, 12);
  }
}

TEST(Arrangement, ArcEndpointsOnLevelSet) {
  std::mt19937_64 rng(test_seed() + 4);
  for (int it = 0; it < 30; ++it) {
    const Case c = random_case(rng);
    TriangleArrangement a;
    triangle_covered(c.target, c.partners, c.eps, {}, &a);
    for (const auto& arc : a.arcs)
      for (Vec2 p : arc_endpoints(arc)) {
        const Vec3 x = a.frame.lift(p);
        EXPECT_LE(std::fabs(dist_point_triangle(x, c.partners[arc.tag]) - c.eps), 1e-7);
        EXPECT_LE(std::fabs(a.frame.height(x)), 1e-9);
      }
  }
}

TEST(ComponentExtensive, IdenticalDiagonal) {
  std::mt19937_64 rng(test_seed() + 5);
  const Surface s = random_surface(rng, 6);
  const SurfacePair p(s, s);
  const auto comps = components(build_graph(p, 0.01));
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_TRUE(component_extensive(p, comps[0], 0.01));
}

TEST(ComponentExtensive, MissingTriangleIsFalse) {
  std::mt19937_64 rng(test_seed() + 6);
  const Surface s = random_surface(rng, 6);
  const SurfacePair p(s, s);
  std::vector<CellId> comp = components(build_graph(p, 0.01))[0];
  std::erase_if(comp, [](const CellId& c) { return c.k == 2; });
  EXPECT_FALSE(component_extensive(p, comp, 0.01));
}

TEST(ComponentExtensive, AgreesWithMonteCarloProjection) {
  std::mt19937_64 rng(test_seed() + 7);
  int compared = 0;
  for (int it = 0; it < 12; ++it) {
    const Surface f = random_surface(rng, 4), g = perturbed(rng, f, {0.05, 0.05, 0.05}, 0.15);
    const SurfacePair p(f, g);
    const double eps = 0.1 + 0.04 * it;
    for (const auto& comp : components(build_graph(p, eps))) {
      bool oracle = true, decided = true;
      for (int side = 0; side < 2 && decided; ++side) {
        const int count = side == 0 ? p.m() : p.n();
        for (int t = 0; t < count && decided; ++t) {
          std::vector<Triangle3> partners;
          for (const CellId& c : comp) {
            if (side == 0 && c.k == t) partners.push_back(p.g_triangles()[c.l]);
            if (side == 1 && c.l == t) partners.push_back(p.f_triangles()[c.k]);
          }
          const Triangle3 target = side == 0 ? p.f_triangles()[t] : p.g_triangles()[t];
          const CoverageSample mc = mc_covered(target, partners, eps, 4000, rng);
          if (partners.empty()) {
            oracle = false;
            continue;
          }
          if (mc.min_margin <= 1e-6) decided = false;
          oracle = oracle && mc.covered;
        }
      }
      if (!decided) continue;
      ++compared;
      EXPECT_EQ(component_extensive(p, comp, eps), oracle);
    }
  }
  EXPECT_GT(compared, 5);
}

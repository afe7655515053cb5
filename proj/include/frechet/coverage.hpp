#pragma once

#include <array>
#include <vector>

#include "frechet/conic.hpp"
#include "frechet/free_space.hpp"

namespace frechet {

/// One trapezoid-like face of the slab decomposition: between two consecutive events
/// in x and two consecutive curves (arcs or triangle sides) in y.
struct ArrangementFace {
  double x0 = 0, x1 = 0;
  std::array<double, 2> bottom{}, top{};  // y at x0 and x1 (approximated by the sample line)
  Vec2 sample;
  bool covered = false;
  int witness = -1;  // partner containing the sample, -1 if uncovered
};

/// Arrangement of the target triangle and the clipped neighborhood arcs of its partners,
/// in the plane coordinates of the target image triangle.
struct TriangleArrangement {
  Plane2Frame frame;
  std::array<Vec2, 3> corners;
  std::vector<ConicArc> arcs;  // tag = position in the partner list
  std::vector<double> events;  // sorted slab boundaries
  std::vector<ArrangementFace> faces;
  bool perturbed = false;      // frame was rotated to break vertical alignments
  int max_arcs_per_section = 0;
};

/// True iff the target triangle lies in the union of the eps-neighborhoods of the
/// partners. When `arrangement` is given the full face decomposition is built and
/// recorded (no early exit, no shortcuts).
bool triangle_covered(const Triangle3& target, const std::vector<Triangle3>& partners, double eps,
                      const Tolerance& tol = {}, TriangleArrangement* arrangement = nullptr);

/// Same for triangle dk of f with partner triangles (indices into g).
bool triangle_covered(const Surface& f, const Surface& g, int dk, const std::vector<int>& partners, double eps,
                      const Tolerance& tol = {}, TriangleArrangement* arrangement = nullptr);

/// Both projections of the component are onto: every triangle of K is covered by its
/// partners in the component and every triangle of L likewise.
bool component_extensive(const SurfacePair& p, const std::vector<CellId>& comp, double eps,
                         const Tolerance& tol = {}, int threads = 1);
bool component_extensive(const Surface& f, const Surface& g, const std::vector<CellId>& comp, double eps,
                         const Tolerance& tol = {});

}  // namespace frechet

#pragma once

#include <array>
#include <vector>

#include "frechet/error.hpp"
#include "frechet/geometry.hpp"
#include "frechet/tolerance.hpp"
#include "frechet/vec.hpp"

namespace frechet {

/// Orthonormal 2D coordinate frame on a plane in R^3.
struct Plane2Frame {
  Vec3 origin;
  Vec3 u, v;

  Vec3 normal() const { return cross(u, v); }
  Vec3 lift(Vec2 p) const { return origin + p.x * u + p.y * v; }
  Vec2 project(Vec3 p) const { return {dot(p - origin, u), dot(p - origin, v)}; }
  double height(Vec3 p) const { return dot(p - origin, normal()); }

  /// Frame with origin at t.a and u along t.b - t.a. Throws on degenerate t.
  static Plane2Frame of_triangle(const Triangle3& t);
  /// Same plane, basis rotated by `angle` radians about the normal.
  Plane2Frame rotated(double angle) const;
};

struct Box2 {
  double xmin = 0.0, xmax = -1.0, ymin = 0.0, ymax = -1.0;

  bool empty() const { return xmin > xmax || ymin > ymax; }
  bool contains(Vec2 p, double slack = 0.0) const {
    return p.x >= xmin - slack && p.x <= xmax + slack && p.y >= ymin - slack && p.y <= ymax + slack;
  }
  Box2 expanded(double r) const { return {xmin - r, xmax + r, ymin - r, ymax + r}; }
  Box2 intersect(const Box2& o) const {
    return {std::max(xmin, o.xmin), std::min(xmax, o.xmax), std::max(ymin, o.ymin), std::min(ymax, o.ymax)};
  }
  bool overlaps(const Box2& o) const { return !intersect(o).empty(); }
  void add(Vec2 p);
};

/// a x^2 + b x y + c y^2 + d x + e y + f
struct Conic {
  double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;

  double operator()(Vec2 p) const { return a * p.x * p.x + b * p.x * p.y + c * p.y * p.y + d * p.x + e * p.y + f; }
  Vec2 gradient(Vec2 p) const { return {2 * a * p.x + b * p.y + d, b * p.x + 2 * c * p.y + e}; }
  double scale() const;
  double quadratic_scale() const;
  /// Quadratic part negligible against the whole coefficient vector.
  bool is_linear() const { return quadratic_scale() <= 1e-12 * scale(); }
  Conic normalized() const;
  Conic operator-(const Conic& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d, e - o.e, f - o.f}; }
};

/// n.x * x + n.y * y + off <= 0 with |n| = 1, so value() is a signed distance.
struct HalfPlane {
  Vec2 n;
  double off = 0.0;
  double value(Vec2 p) const { return dot(n, p) + off; }
};

enum class ArcKind { CircleArc, EllipseArc, Segment };
enum class FeatureKind { Vertex, Edge, Face };

/// Feature of a triangle: vertex i, edge i (from corner i to corner i+1), or the face.
struct Feature {
  FeatureKind kind = FeatureKind::Face;
  int index = 0;
  friend bool operator==(const Feature&, const Feature&) = default;
};

/// A piece of a conic restricted to a convex polygonal clip region.
struct ConicArc {
  ArcKind kind = ArcKind::Segment;
  Conic conic;
  std::vector<HalfPlane> clip;
  Box2 bounds;
  Feature source;
  int tag = -1;  // caller-assigned owner id (e.g. partner triangle)

  bool in_range(Vec2 p, double slack) const;
};

enum class RegionStatus {
  Empty,       // plane farther than eps from the triangle
  Regular,     // region with positive area bounded by the arcs
  Degenerate,  // plane touches the eps-neighborhood: region of zero area
};

/// {p in plane : dist(p, t) <= eps} described by its boundary arcs (plane coordinates).
struct NeighborhoodSection {
  RegionStatus status = RegionStatus::Empty;
  std::vector<ConicArc> arcs;
};

class OverlappingArcs : public NumericError {
 public:
  OverlappingArcs() : NumericError("overlapping arcs") {}
};

/// Squared distance to one feature's supporting point/line/plane as a conic in plane
/// coordinates, together with the feature's nearest-point region (clip).
struct FeatureField {
  Feature feature;
  Conic squared_distance;
  std::vector<HalfPlane> region;
  bool region_empty = false;
};

std::array<FeatureField, 7> feature_fields(const Triangle3& t, const Plane2Frame& plane);

/// The seven features in a fixed order: vertices 0..2, edges 0..2, face.
const std::array<Feature, 7>& triangle_features();

/// Half-space (x - point) . normal <= 0.
struct HalfSpace3 {
  Vec3 point, normal;
  double value(Vec3 x) const { return dot(x - point, normal); }
};

/// Nearest-point region of a feature (points whose closest point on t lies on it).
std::vector<HalfSpace3> feature_region(const Triangle3& t, Feature f);
/// Squared distance from x to the feature's supporting point, line or plane.
double feature_support_distance2(const Triangle3& t, Feature f, Vec3 x);

NeighborhoodSection eps_neighborhood_plane_boundary(const Triangle3& t, double eps, const Plane2Frame& plane,
                                                    const Tolerance& tol = {});

/// Point-in-region test derived from the arcs alone (vertical ray parity).
bool section_contains(const NeighborhoodSection& s, Vec2 p);

/// Intersections of two conics inside `window`. Throws OverlappingArcs when the
/// conics share a component.
std::vector<Vec2> conic_intersections(const Conic& q1, const Conic& q2, const Box2& window);
/// Points p + lambda * dir on the conic with lambda in [lo, hi].
std::vector<Vec2> conic_line_intersections(const Conic& q, Vec2 p, Vec2 dir, double lo, double hi);

std::vector<Vec2> arc_pair_intersections(const ConicArc& a, const ConicArc& b);
std::vector<Vec2> arc_endpoints(const ConicArc& arc);
/// Points of the arc with a vertical tangent (x-extremes).
std::vector<Vec2> arc_vertical_extremes(const ConicArc& arc);
/// y-coordinates of the arc on the vertical line through x.
std::vector<double> arc_y_at(const ConicArc& arc, double x);
std::vector<Vec2> sample_arc(const ConicArc& arc, int n);

constexpr double kClipSlack = 1e-9;

}  // namespace frechet

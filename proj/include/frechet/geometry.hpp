#pragma once

#include "frechet/vec.hpp"

namespace frechet {

struct Segment3 {
  Vec3 a, b;
};

/// Triangle in R^3. Distance routines reject zero-area triangles unless
/// allow_degenerate is set.
struct Triangle3 {
  Vec3 a, b, c;
  bool allow_degenerate = false;

  const Vec3& operator[](int i) const { return i == 0 ? a : (i == 1 ? b : c); }
  Vec3 normal() const { return cross(b - a, c - a); }
  double area() const { return 0.5 * norm(normal()); }
  /// Zero area relative to the squared longest edge.
  bool is_degenerate() const;
};

struct ClosestPair {
  double distance;
  Vec3 on_first, on_second;
};

Vec3 closest_point_on_segment(Vec3 p, const Segment3& s);
Vec3 closest_point_on_triangle(Vec3 p, const Triangle3& t);

double dist_point_segment(Vec3 p, const Segment3& s);
double dist_point_triangle(Vec3 p, const Triangle3& t);
/// Closest points of two segments; handles zero-length segments.
ClosestPair closest_segment_segment(const Segment3& s1, const Segment3& s2);
double dist_segment_segment(const Segment3& s1, const Segment3& s2);
double dist_segment_triangle(const Segment3& s, const Triangle3& t);
double dist_triangle_triangle(const Triangle3& t1, const Triangle3& t2);

/// Largest pairwise distance between the corners.
double diameter(const Triangle3& t);

}  // namespace frechet

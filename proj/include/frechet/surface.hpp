#pragma once

#include <array>
#include <string>
#include <vector>

#include "frechet/geometry.hpp"
#include "frechet/vec.hpp"

namespace frechet {

/// Undirected parameter edge with lo < hi and up to two incident triangles.
struct ParamEdge {
  int lo = -1, hi = -1;
  std::vector<int> triangles;
  bool boundary() const { return triangles.size() == 1; }
};

/// Triangulation of the unit square. Triangles are stored counterclockwise.
struct ParamTriangulation {
  std::vector<Vec2> vertices;
  /// Original textual coordinates ("p/q" or decimal) when read from a file; may be empty.
  std::vector<std::array<std::string, 2>> vertex_text;
  std::vector<std::array<int, 3>> triangles;

  // Derived by build_adjacency().
  std::vector<ParamEdge> edges;                  // sorted by (lo, hi)
  std::vector<std::array<int, 3>> triangle_edges;  // edge i joins corner i and corner i+1

  /// Recomputes edges and triangle_edges. Requires indices in range.
  void build_adjacency();
  /// Index of edge {a, b} or -1.
  int edge_index(int a, int b) const;
  /// Boundary vertices in counterclockwise order, starting from the smallest index.
  /// Empty if the boundary edges do not form a single cycle.
  std::vector<int> boundary_cycle() const;
  double signed_area(int t) const;
};

struct Surface {
  int dimension = 3;
  ParamTriangulation param;
  std::vector<Vec3> image;

  int triangle_count() const { return static_cast<int>(param.triangles.size()); }
  int edge_count() const { return static_cast<int>(param.edges.size()); }
  Triangle3 image_triangle(int t) const;
  Segment3 image_edge(int e) const;
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
  std::string joined() const;
};

ValidationReport validate(const Surface& s);
/// Throws InputError listing the issues when the surface is invalid.
void require_valid(const Surface& s);

/// Image of a parameter point. Throws InputError outside the unit square.
Vec3 eval(const Surface& s, Vec2 x);

/// Each triangle (a, b, c) becomes six triangles around its centroid; new vertices are
/// the edge midpoints (in edge order) followed by the centroids (in triangle order).
Surface barycentric_subdivide(const Surface& s);
Surface barycentric_subdivide(const Surface& s, int times);

double mesh_size(const ParamTriangulation& t);
/// Largest operator norm of the per-triangle linear parts.
double lipschitz_constant(const Surface& s);

/// Construct a surface and derive its adjacency (no validation).
Surface make_surface(int dimension, std::vector<Vec2> param_vertices, std::vector<std::array<int, 3>> triangles,
                     std::vector<Vec3> image);

std::vector<Triangle3> image_triangles(const Surface& s);
std::vector<Segment3> image_edges(const Surface& s);

}  // namespace frechet

#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "frechet/surface.hpp"
#include "frechet/tolerance.hpp"

namespace frechet {

/// Pair (triangle of K, triangle of L).
struct CellId {
  int k = 0, l = 0;
  friend auto operator<=>(const CellId&, const CellId&) = default;
};

/// Edge of one triangulation against a triangle of the other.
struct BoundaryCellId {
  enum class Side { KEdge, LEdge };
  Side side = Side::KEdge;
  int edge = 0;
  int tri = 0;
};

/// Two validated surfaces with cached image simplices and the distance tables that
/// every free-space predicate reduces to. Immutable after construction.
class SurfacePair {
 public:
  SurfacePair(Surface f, Surface g, int threads = 1);

  const Surface& f() const { return f_; }
  const Surface& g() const { return g_; }
  const std::vector<Triangle3>& f_triangles() const { return ft_; }
  const std::vector<Triangle3>& g_triangles() const { return gt_; }
  const std::vector<Segment3>& f_edges() const { return fe_; }
  const std::vector<Segment3>& g_edges() const { return ge_; }
  int m() const { return static_cast<int>(ft_.size()); }
  int n() const { return static_cast<int>(gt_.size()); }

  double cell_distance(CellId c) const { return cell_[c.k * n() + c.l]; }
  double boundary_distance(const BoundaryCellId& b) const;

  /// Same pair with the roles of f and g exchanged.
  SurfacePair swapped() const;

 private:
  SurfacePair() = default;
  Surface f_, g_;
  std::vector<Triangle3> ft_, gt_;
  std::vector<Segment3> fe_, ge_;
  std::vector<double> cell_;    // m x n
  std::vector<double> kedge_;   // |E_K| x n
  std::vector<double> ledge_;   // |E_L| x m
};

struct FreeSpaceGraph {
  double eps = 0.0;
  std::vector<CellId> vertices;            // sorted
  std::vector<std::pair<int, int>> edges;  // indices into vertices, first < second, sorted
  std::vector<int> component;              // label per vertex, labels ordered by first vertex
  int component_count = 0;

  /// Index of a cell in `vertices` or -1.
  int find(CellId c) const;
};

bool cell_nonempty(const Surface& f, const Surface& g, CellId c, double eps, const Tolerance& tol = {});
bool boundary_cell_nonempty(const Surface& f, const Surface& g, const BoundaryCellId& b, double eps,
                            const Tolerance& tol = {});

bool cell_nonempty(const SurfacePair& p, CellId c, double eps, const Tolerance& tol = {});
bool boundary_cell_nonempty(const SurfacePair& p, const BoundaryCellId& b, double eps, const Tolerance& tol = {});

FreeSpaceGraph build_graph(const SurfacePair& p, double eps, const Tolerance& tol = {});
FreeSpaceGraph build_graph(const Surface& f, const Surface& g, double eps, const Tolerance& tol = {});

/// Cell sets of the connected components, in label order.
std::vector<std::vector<CellId>> components(const FreeSpaceGraph& g);

/// One line per vertex: "k,l: k',l' k'',l'' ..." followed by component labels.
std::string dump_adjacency(const FreeSpaceGraph& g);

}  // namespace frechet

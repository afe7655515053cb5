#include "frechet/free_space.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "frechet/error.hpp"
#include "frechet/parallel.hpp"

namespace frechet {

SurfacePair::SurfacePair(Surface f, Surface g, int threads) : f_(std::move(f)), g_(std::move(g)) {
  require_valid(f_);
  require_valid(g_);
  f_.param.build_adjacency();
  g_.param.build_adjacency();
  ft_ = image_triangles(f_);
  gt_ = image_triangles(g_);
  fe_ = image_edges(f_);
  ge_ = image_edges(g_);
  const int M = m(), N = n();
  cell_.assign(static_cast<std::size_t>(M) * N, 0.0);
  parallel_for(M, threads, [&](int k) {
    for (int l = 0; l < N; ++l) cell_[k * N + l] = dist_triangle_triangle(ft_[k], gt_[l]);
  });
  kedge_.assign(fe_.size() * N, 0.0);
  parallel_for(static_cast<int>(fe_.size()), threads, [&](int e) {
    for (int l = 0; l < N; ++l) kedge_[e * N + l] = dist_segment_triangle(fe_[e], gt_[l]);
  });
  ledge_.assign(ge_.size() * M, 0.0);
  parallel_for(static_cast<int>(ge_.size()), threads, [&](int e) {
    for (int k = 0; k < M; ++k) ledge_[e * M + k] = dist_segment_triangle(ge_[e], ft_[k]);
  });
}

double SurfacePair::boundary_distance(const BoundaryCellId& b) const {
  if (b.side == BoundaryCellId::Side::KEdge) return kedge_[b.edge * n() + b.tri];
  return ledge_[b.edge * m() + b.tri];
}

SurfacePair SurfacePair::swapped() const {
  SurfacePair s;
  s.f_ = g_;
  s.g_ = f_;
  s.ft_ = gt_;
  s.gt_ = ft_;
  s.fe_ = ge_;
  s.ge_ = fe_;
  s.kedge_ = ledge_;
  s.ledge_ = kedge_;
  const int M = m(), N = n();
  s.cell_.assign(cell_.size(), 0.0);
  for (int k = 0; k < M; ++k)
    for (int l = 0; l < N; ++l) s.cell_[l * M + k] = cell_[k * N + l];
  return s;
}

int FreeSpaceGraph::find(CellId c) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), c);
  if (it == vertices.end() || *it != c) return -1;
  return static_cast<int>(it - vertices.begin());
}

bool cell_nonempty(const SurfacePair& p, CellId c, double eps, const Tolerance& tol) {
  return tol_leq(p.cell_distance(c), eps, tol);
}

bool boundary_cell_nonempty(const SurfacePair& p, const BoundaryCellId& b, double eps, const Tolerance& tol) {
  return tol_leq(p.boundary_distance(b), eps, tol);
}

bool cell_nonempty(const Surface& f, const Surface& g, CellId c, double eps, const Tolerance& tol) {
  if (c.k < 0 || c.k >= f.triangle_count() || c.l < 0 || c.l >= g.triangle_count())
    throw InputError("cell index out of range");
  return tol_leq(dist_triangle_triangle(f.image_triangle(c.k), g.image_triangle(c.l)), eps, tol);
}

bool boundary_cell_nonempty(const Surface& f, const Surface& g, const BoundaryCellId& b, double eps,
                            const Tolerance& tol) {
  const bool kside = b.side == BoundaryCellId::Side::KEdge;
  const Surface& es = kside ? f : g;
  const Surface& ts = kside ? g : f;
  if (b.edge < 0 || b.edge >= es.edge_count() || b.tri < 0 || b.tri >= ts.triangle_count())
    throw InputError("boundary cell index out of range");
  return tol_leq(dist_segment_triangle(es.image_edge(b.edge), ts.image_triangle(b.tri)), eps, tol);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int root(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = root(a);
    b = root(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

FreeSpaceGraph build_graph(const SurfacePair& p, double eps, const Tolerance& tol) {
  FreeSpaceGraph g;
  g.eps = eps;
  const int M = p.m(), N = p.n();
  for (int k = 0; k < M; ++k)
    for (int l = 0; l < N; ++l)
      if (cell_nonempty(p, {k, l}, eps, tol)) g.vertices.push_back({k, l});
  auto add_edge = [&](CellId a, CellId b) {
    int ia = g.find(a), ib = g.find(b);
    if (ia < 0 || ib < 0) return;  // cannot happen: the boundary cell lies in both cells
    if (ia > ib) std::swap(ia, ib);
    g.edges.push_back({ia, ib});
  };
  const auto& fe = p.f().param.edges;
  for (int e = 0; e < static_cast<int>(fe.size()); ++e) {
    if (fe[e].triangles.size() != 2) continue;
    for (int l = 0; l < N; ++l)
      if (boundary_cell_nonempty(p, {BoundaryCellId::Side::KEdge, e, l}, eps, tol))
        add_edge({fe[e].triangles[0], l}, {fe[e].triangles[1], l});
  }
  const auto& ge = p.g().param.edges;
  for (int e = 0; e < static_cast<int>(ge.size()); ++e) {
    if (ge[e].triangles.size() != 2) continue;
    for (int k = 0; k < M; ++k)
      if (boundary_cell_nonempty(p, {BoundaryCellId::Side::LEdge, e, k}, eps, tol))
        add_edge({k, ge[e].triangles[0]}, {k, ge[e].triangles[1]});
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());

  UnionFind uf(static_cast<int>(g.vertices.size()));
  for (const auto& [a, b] : g.edges) uf.unite(a, b);
  g.component.assign(g.vertices.size(), -1);
  std::vector<int> label(g.vertices.size(), -1);
  for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
    const int r = uf.root(i);
    if (label[r] < 0) label[r] = g.component_count++;
    g.component[i] = label[r];
  }
  return g;
}

FreeSpaceGraph build_graph(const Surface& f, const Surface& g, double eps, const Tolerance& tol) {
  return build_graph(SurfacePair(f, g), eps, tol);
}

std::vector<std::vector<CellId>> components(const FreeSpaceGraph& g) {
  std::vector<std::vector<CellId>> out(g.component_count);
  for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) out[g.component[i]].push_back(g.vertices[i]);
  return out;
}

std::string dump_adjacency(const FreeSpaceGraph& g) {
  std::vector<std::vector<int>> adj(g.vertices.size());
  for (const auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::ostringstream os;
  os << "# eps " << g.eps << ", " << g.vertices.size() << " cells, " << g.edges.size() << " edges, "
     << g.component_count << " components\n";
  for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
    std::sort(adj[i].begin(), adj[i].end());
    os << g.vertices[i].k << "," << g.vertices[i].l << " [c" << g.component[i] << "]:";
    for (int j : adj[i]) os << " " << g.vertices[j].k << "," << g.vertices[j].l;
    os << "\n";
  }
  return os.str();
}

}  // namespace frechet

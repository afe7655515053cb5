#include "frechet/semi_frechet.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "frechet/error.hpp"

namespace frechet {

namespace {

double steady_now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

bool chain_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Combinatorial data of a triangulation used by the enumerator and validators.
struct Topology {
  const ParamTriangulation* t;
  std::vector<std::vector<int>> adj;
  std::vector<int> cycle;    // boundary, counterclockwise
  std::vector<int> cyc_pos;  // position in cycle or -1
  std::map<std::pair<int, int>, int> left_of;  // directed edge -> triangle on its left

  explicit Topology(const ParamTriangulation& p) : t(&p) {
    adj.assign(p.vertices.size(), {});
    for (const auto& e : p.edges) {
      adj[e.lo].push_back(e.hi);
      adj[e.hi].push_back(e.lo);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    cycle = p.boundary_cycle();
    cyc_pos.assign(p.vertices.size(), -1);
    for (int i = 0; i < static_cast<int>(cycle.size()); ++i) cyc_pos[cycle[i]] = i;
    for (int k = 0; k < static_cast<int>(p.triangles.size()); ++k)
      for (int i = 0; i < 3; ++i) left_of[{p.triangles[k][i], p.triangles[k][(i + 1) % 3]}] = k;
  }

  bool boundary_edge(int a, int b) const {
    const int e = t->edge_index(a, b);
    return e >= 0 && t->edges[e].boundary();
  }
  bool all_boundary(const std::vector<int>& chain) const {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      if (!boundary_edge(chain[i], chain[i + 1])) return false;
    return true;
  }
  // Vertex reached from v after `steps` counterclockwise boundary steps.
  int ccw(int v, int steps) const {
    const int n = static_cast<int>(cycle.size());
    return cycle[(cyc_pos[v] + steps) % n];
  }
};

struct Enumerator {
  const Surface& K;
  const Surface& L;
  const EnumerationOptions& opt;
  const std::function<bool(const MeshHomeoCandidate&)>& sink;
  Topology kt, lt;
  std::vector<int> order;       // K edges in assignment order
  int boundary_count = 0;       // leading entries of `order` that are boundary edges
  std::vector<int> kcycle_edge_from;  // for boundary position i: the cycle vertex the edge starts at
  std::vector<int> phi;         // K vertex -> L vertex
  std::vector<int> owner;       // L vertex -> K vertex (image), -2 chain interior, -1 free
  std::vector<std::vector<int>> chains;
  int consumed = 0;             // boundary L edges used by boundary chains (prune mode)
  long yielded = 0, steps = 0;
  bool stop = false;
  bool has_identity = false;
  MeshHomeoCandidate identity;

  Enumerator(const Surface& k, const Surface& l, const EnumerationOptions& o,
             const std::function<bool(const MeshHomeoCandidate&)>& s)
      : K(k), L(l), opt(o), sink(s), kt(k.param), lt(l.param) {
    const auto& ke = K.param.edges;
    const int r = static_cast<int>(kt.cycle.size());
    std::vector<char> placed(ke.size(), 0);
    for (int i = 0; i < r; ++i) {
      const int a = kt.cycle[i], b = kt.cycle[(i + 1) % r];
      const int e = K.param.edge_index(a, b);
      order.push_back(e);
      kcycle_edge_from.push_back(a);
      placed[e] = 1;
    }
    boundary_count = r;
    std::vector<char> mapped(K.param.vertices.size(), 0);
    for (int v : kt.cycle) mapped[v] = 1;
    for (;;) {
      int pick = -1;
      for (int e = 0; e < static_cast<int>(ke.size()) && pick < 0; ++e)
        if (!placed[e] && (mapped[ke[e].lo] || mapped[ke[e].hi])) pick = e;
      if (pick < 0)
        for (int e = 0; e < static_cast<int>(ke.size()) && pick < 0; ++e)
          if (!placed[e]) pick = e;
      if (pick < 0) break;
      placed[pick] = 1;
      mapped[ke[pick].lo] = mapped[ke[pick].hi] = 1;
      order.push_back(pick);
    }
    phi.assign(K.param.vertices.size(), -1);
    owner.assign(L.param.vertices.size(), -1);
    chains.assign(ke.size(), {});
  }

  bool prune() const { return opt.mode == EnumerationMode::Prune; }

  bool budget_exhausted() {
    ++steps;
    if (steps > opt.max_search_steps) return true;
    if (opt.deadline > 0.0 && (steps & 255) == 0 && steady_now() > opt.deadline) return true;
    return false;
  }

  // All simple paths from `start` of length 1..cap; `accept_end` filters the last vertex,
  // `pass` filters interior vertices.
  template <class AcceptEnd, class Pass>
  void paths_from(int start, AcceptEnd accept_end, Pass pass, std::vector<std::vector<int>>& out) const {
    std::vector<int> path{start};
    std::vector<char> on(L.param.vertices.size(), 0);
    on[start] = 1;
    auto rec = [&](auto&& self) -> void {
      const int v = path.back();
      for (int w : lt.adj[v]) {
        if (on[w]) continue;
        path.push_back(w);
        if (accept_end(w)) out.push_back(path);
        if (static_cast<int>(path.size()) - 1 < opt.max_chain_length && pass(w)) {
          on[w] = 1;
          self(self);
          on[w] = 0;
        }
        path.pop_back();
      }
    };
    rec(rec);
  }

  std::vector<std::vector<int>> boundary_chains_prune(int pos) {
    std::vector<std::vector<int>> out;
    const int e = order[pos];
    const int a = kcycle_edge_from[pos];
    const int r = boundary_count;
    const int b = kt.cycle[(pos + 1) % r];
    const int s_total = static_cast<int>(lt.cycle.size());
    const int remaining_after = r - pos - 1;
    const int s_left = s_total - consumed;
    std::vector<int> starts;
    if (phi[a] >= 0)
      starts.push_back(phi[a]);
    else
      starts = std::vector<int>(lt.cycle.begin(), lt.cycle.end());
    for (int sa : starts) {
      for (int len = 1; len <= opt.max_chain_length; ++len) {
        const int rest = s_left - len;
        if (remaining_after == 0 ? rest != 0 : (rest < remaining_after || rest > remaining_after * opt.max_chain_length))
          continue;
        std::vector<int> path{sa};
        bool ok = true;
        for (int k = 1; k <= len && ok; ++k) {
          const int w = lt.ccw(sa, k);
          const bool last = k == len;
          if (!last && owner[w] != -1) ok = false;
          if (last) {
            if (phi[b] >= 0)
              ok = w == phi[b];
            else
              ok = owner[w] == -1;
          }
          path.push_back(w);
        }
        if (!ok) continue;
        if (a != K.param.edges[e].lo) std::reverse(path.begin(), path.end());
        out.push_back(std::move(path));
      }
    }
    std::sort(out.begin(), out.end(), chain_less);
    return out;
  }

  std::vector<std::vector<int>> general_chains(int pos) {
    const int e = order[pos];
    const int u = K.param.edges[e].lo, v = K.param.edges[e].hi;
    const bool kb = K.param.edges[e].boundary();
    std::vector<std::vector<int>> out;
    auto interior_ok = [&](int w) { return !prune() || owner[w] == -1; };
    auto free_end = [&](int w) { return prune() ? owner[w] == -1 : owner[w] < 0; };
    if (phi[u] >= 0 && phi[v] >= 0) {
      const int target = phi[v];
      paths_from(phi[u], [&](int w) { return w == target; }, [&](int w) { return w != target && interior_ok(w); }, out);
    } else if (phi[u] >= 0) {
      paths_from(phi[u], free_end, interior_ok, out);
    } else if (phi[v] >= 0) {
      paths_from(phi[v], free_end, interior_ok, out);
      for (auto& c : out) std::reverse(c.begin(), c.end());
    } else {
      for (int s = 0; s < static_cast<int>(L.param.vertices.size()); ++s)
        if (free_end(s)) paths_from(s, free_end, interior_ok, out);
    }
    std::vector<std::vector<int>> kept;
    for (auto& c : out)
      if (lt.all_boundary(c) == kb) kept.push_back(std::move(c));
    std::sort(kept.begin(), kept.end(), chain_less);
    return kept;
  }

  void apply(int e, const std::vector<int>& c, std::vector<int>& newly_mapped, std::vector<int>& newly_owned) {
    const int u = K.param.edges[e].lo, v = K.param.edges[e].hi;
    for (int kv : {u, v}) {
      const int lv = kv == u ? c.front() : c.back();
      if (phi[kv] < 0) {
        phi[kv] = lv;
        owner[lv] = kv;
        newly_mapped.push_back(kv);
      }
    }
    if (prune())
      for (std::size_t i = 1; i + 1 < c.size(); ++i) {
        owner[c[i]] = -2;
        newly_owned.push_back(c[i]);
      }
    chains[e] = c;
  }

  void undo(int e, const std::vector<int>& newly_mapped, const std::vector<int>& newly_owned) {
    for (int kv : newly_mapped) {
      owner[phi[kv]] = -1;
      phi[kv] = -1;
    }
    for (int lv : newly_owned) owner[lv] = -1;
    chains[e].clear();
  }

  void emit() {
    MeshHomeoCandidate c{chains, phi};
    if (has_identity && c.chains == identity.chains) return;
    ++yielded;
    if (!sink(c) || yielded >= opt.max_candidates) stop = true;
  }

  void dfs(int pos) {
    if (stop) return;
    if (budget_exhausted()) {
      stop = true;
      return;
    }
    if (pos == static_cast<int>(order.size())) {
      emit();
      return;
    }
    const int e = order[pos];
    const bool boundary_step = prune() && pos < boundary_count;
    const auto options = boundary_step ? boundary_chains_prune(pos) : general_chains(pos);
    for (const auto& c : options) {
      if (!prune()) {
        // raw mode: endpoints of a new mapping must not collide with existing images
        const int u = K.param.edges[e].lo, v = K.param.edges[e].hi;
        if (phi[u] < 0 && owner[c.front()] >= 0) continue;
        if (phi[v] < 0 && owner[c.back()] >= 0) continue;
        if (phi[u] < 0 && phi[v] < 0 && c.front() == c.back()) continue;
      }
      std::vector<int> nm, no;
      apply(e, c, nm, no);
      if (boundary_step) consumed += static_cast<int>(c.size()) - 1;
      dfs(pos + 1);
      if (boundary_step) consumed -= static_cast<int>(c.size()) - 1;
      undo(e, nm, no);
      if (stop) return;
    }
  }

  long run() {
    if (opt.max_candidates <= 0) return 0;
    if (kt.cycle.empty() || lt.cycle.empty()) return 0;
    if (same_triangulation(K, L)) {
      has_identity = true;
      identity = identity_candidate(K);
      ++yielded;
      if (!sink(identity) || yielded >= opt.max_candidates) return yielded;
    }
    dfs(0);
    return yielded;
  }
};

}  // namespace

bool same_triangulation(const Surface& km, const Surface& ln) {
  const auto& a = km.param;
  const auto& b = ln.param;
  if (a.vertices.size() != b.vertices.size() || a.triangles != b.triangles) return false;
  for (std::size_t i = 0; i < a.vertices.size(); ++i)
    if (norm(a.vertices[i] - b.vertices[i]) > 1e-12) return false;
  return true;
}

MeshHomeoCandidate identity_candidate(const Surface& km) {
  MeshHomeoCandidate c;
  for (const auto& e : km.param.edges) c.chains.push_back({e.lo, e.hi});
  c.vertex_map.resize(km.param.vertices.size());
  for (std::size_t i = 0; i < c.vertex_map.size(); ++i) c.vertex_map[i] = static_cast<int>(i);
  return c;
}

long enumerate_candidates(const Surface& km, const Surface& ln, const EnumerationOptions& opt,
                          const std::function<bool(const MeshHomeoCandidate&)>& sink) {
  if (opt.max_chain_length <= 0) throw InputError("max chain length must be positive");
  Enumerator en(km, ln, opt, sink);
  return en.run();
}

std::vector<MeshHomeoCandidate> enumerate_candidates(const Surface& km, const Surface& ln,
                                                     const EnumerationOptions& opt) {
  std::vector<MeshHomeoCandidate> out;
  enumerate_candidates(km, ln, opt, [&](const MeshHomeoCandidate& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

bool is_valid_mesh_homeo(const MeshHomeoCandidate& c, const Surface& km, const Surface& ln) {
  const auto& ke = km.param.edges;
  const int nl = static_cast<int>(ln.param.vertices.size());
  if (c.chains.size() != ke.size()) return false;
  const Topology lt(ln.param);
  const Topology kt(km.param);
  if (lt.cycle.empty() || kt.cycle.empty()) return false;
  std::vector<int> phi(km.param.vertices.size(), -1);
  for (std::size_t e = 0; e < ke.size(); ++e) {
    const auto& ch = c.chains[e];
    if (ch.size() < 2) return false;
    std::vector<int> seen(ch);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    for (std::size_t i = 0; i < ch.size(); ++i) {
      if (ch[i] < 0 || ch[i] >= nl) return false;
      if (i + 1 < ch.size() && ln.param.edge_index(ch[i], ch[i + 1]) < 0) return false;
    }
    for (const auto& [kv, lv] : {std::pair{ke[e].lo, ch.front()}, std::pair{ke[e].hi, ch.back()}}) {
      if (phi[kv] >= 0 && phi[kv] != lv) return false;
      phi[kv] = lv;
    }
  }
  std::vector<int> use(nl, -1);  // image owner, or -2 for chain interiors
  for (std::size_t v = 0; v < phi.size(); ++v) {
    if (phi[v] < 0) return false;
    if (use[phi[v]] != -1) return false;
    use[phi[v]] = static_cast<int>(v);
  }
  for (const auto& ch : c.chains)
    for (std::size_t i = 1; i + 1 < ch.size(); ++i) {
      if (use[ch[i]] != -1) return false;
      use[ch[i]] = -2;
    }
  // boundary: consecutive counterclockwise steps, covering the boundary of L once
  const int r = static_cast<int>(kt.cycle.size());
  int total = 0;
  for (int i = 0; i < r; ++i) {
    const int a = kt.cycle[i], b = kt.cycle[(i + 1) % r];
    const int e = km.param.edge_index(a, b);
    std::vector<int> ch = c.chains[e];
    if (a != ke[e].lo) std::reverse(ch.begin(), ch.end());
    for (std::size_t k = 0; k + 1 < ch.size(); ++k) {
      if (lt.cyc_pos[ch[k]] < 0 || lt.ccw(ch[k], 1) != ch[k + 1]) return false;
    }
    total += static_cast<int>(ch.size()) - 1;
  }
  for (std::size_t e = 0; e < ke.size(); ++e)
    if (!ke[e].boundary() && lt.all_boundary(c.chains[e])) return false;
  return total == static_cast<int>(lt.cycle.size());
}

std::vector<std::vector<int>> face_regions(const MeshHomeoCandidate& c, const Surface& km, const Surface& ln) {
  if (!is_valid_mesh_homeo(c, km, ln)) throw InputError("face_regions: invalid mesh homeomorphism candidate");
  const Topology lt(ln.param);
  const auto& lp = ln.param;
  std::vector<char> wall(lp.edges.size(), 0);
  for (const auto& ch : c.chains)
    for (std::size_t i = 0; i + 1 < ch.size(); ++i) wall[lp.edge_index(ch[i], ch[i + 1])] = 1;
  std::vector<int> region_of(lp.triangles.size(), -1);
  std::vector<std::vector<int>> regions(km.param.triangles.size());
  for (int t = 0; t < static_cast<int>(km.param.triangles.size()); ++t) {
    const int a = km.param.triangles[t][0], b = km.param.triangles[t][1];
    const int e = km.param.edge_index(a, b);
    std::vector<int> ch = c.chains[e];
    if (a != km.param.edges[e].lo) std::reverse(ch.begin(), ch.end());
    const auto it = lt.left_of.find({ch[0], ch[1]});
    if (it == lt.left_of.end()) throw InputError("face_regions: chain runs outside L");
    const int seed = it->second;
    if (region_of[seed] != -1) throw InputError("face_regions: regions are not distinct");
    std::vector<int> stack{seed};
    region_of[seed] = t;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      regions[t].push_back(x);
      for (int k = 0; k < 3; ++k) {
        const int eidx = lp.triangle_edges[x][k];
        if (wall[eidx]) continue;
        for (int y : lp.edges[eidx].triangles) {
          if (y == x) continue;
          if (region_of[y] == t) continue;
          if (region_of[y] != -1) throw InputError("face_regions: regions overlap");
          region_of[y] = t;
          stack.push_back(y);
        }
      }
    }
    std::sort(regions[t].begin(), regions[t].end());
  }
  for (int r : region_of)
    if (r < 0) throw InputError("face_regions: regions do not cover L");
  return regions;
}

double evaluate_delta(const MeshHomeoCandidate& c, const Surface& fm, const Surface& gn,
                      const std::vector<std::vector<int>>& regions) {
  (void)c;
  double best = 0.0;
  for (int t = 0; t < fm.triangle_count(); ++t) {
    std::vector<int> ws;
    for (int l : regions[t])
      for (int w : gn.param.triangles[l]) ws.push_back(w);
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    for (int v : fm.param.triangles[t])
      for (int w : ws) best = std::max(best, distance(fm.image[v], gn.image[w]));
  }
  return best;
}

double evaluate_delta(const MeshHomeoCandidate& c, const Surface& fm, const Surface& gn) {
  return evaluate_delta(c, fm, gn, face_regions(c, fm, gn));
}

std::vector<std::pair<int, int>> semi_pair_order(const Budget& b) {
  std::vector<std::pair<int, int>> out;
  if (b.pairs_m_2m) {
    for (int m = 0; 2 * m <= b.max_level; ++m) out.push_back({m, 2 * m});
  } else {
    for (int s = 0; s <= 2 * b.max_level; ++s)
      for (int m = 0; m <= s; ++m)
        if (m <= b.max_level && s - m <= b.max_level) out.push_back({m, s - m});
  }
  if (static_cast<int>(out.size()) > b.max_pairs) out.resize(std::max(0, b.max_pairs));
  return out;
}

std::vector<SemiBound> semi_compute_stream(const Surface& f, const Surface& g, const Budget& budget,
                                           const std::function<void(const SemiBound&)>& sink) {
  require_valid(f);
  require_valid(g);
  std::vector<SemiBound> out;
  if (budget.max_pairs <= 0 || budget.max_candidates <= 0) return out;
  const double start = steady_now();
  const double deadline = budget.wall_clock_seconds > 0 ? start + budget.wall_clock_seconds : 0.0;
  std::vector<Surface> fs{f}, gs{g};
  fs[0].param.build_adjacency();
  gs[0].param.build_adjacency();
  auto level = [](std::vector<Surface>& cache, int m) -> const Surface& {
    while (static_cast<int>(cache.size()) <= m) cache.push_back(barycentric_subdivide(cache.back()));
    return cache[m];
  };
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [m, n] : semi_pair_order(budget)) {
    if (deadline > 0 && steady_now() > deadline) break;
    const Surface& km = level(fs, m);
    const Surface& ln = level(gs, n);
    if (ln.param.vertices.size() < km.param.vertices.size()) continue;
    EnumerationOptions opt;
    opt.max_candidates = budget.max_candidates;
    opt.max_chain_length = budget.max_chain_length;
    opt.mode = budget.mode;
    opt.max_search_steps = budget.max_search_steps;
    opt.deadline = deadline;
    long index = 0;
    enumerate_candidates(km, ln, opt, [&](const MeshHomeoCandidate& c) {
      const long my = index++;
      if (!is_valid_mesh_homeo(c, km, ln)) return true;
      const double v = evaluate_delta(c, km, ln, face_regions(c, km, ln));
      if (v < best) {
        best = v;
        out.push_back({v, m, n, my});
        if (sink) sink(out.back());
      }
      return true;
    });
  }
  return out;
}

}  // namespace frechet

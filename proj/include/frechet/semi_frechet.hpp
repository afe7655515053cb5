#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "frechet/surface.hpp"

namespace frechet {

/// Assignment of every edge of K^m (in K^m's edge order) to a chain of L^n vertices,
/// directed from the image of the edge's smaller endpoint to the image of the larger.
struct MeshHomeoCandidate {
  std::vector<std::vector<int>> chains;
  std::vector<int> vertex_map;  // K^m vertex -> L^n vertex, -1 if unassigned
};

enum class EnumerationMode {
  Prune,  // only candidates satisfying the full validity conditions are generated
  Raw,    // chains constrained only by endpoints, injectivity, edge class and simplicity
};

struct EnumerationOptions {
  long max_candidates = 1000;
  int max_chain_length = 3;
  EnumerationMode mode = EnumerationMode::Prune;
  long max_search_steps = 2'000'000;  // DFS nodes per call
  double deadline = 0.0;              // steady-clock seconds; 0 disables
};

/// Streams candidates in the deterministic order: the identity assignment first when
/// K^m and L^n are the same triangulation, then depth-first over edges (boundary edges
/// counterclockwise, then interior edges adjacent to mapped vertices) with chains ordered
/// by length and then lexicographically. `sink` returns false to stop.
/// Returns the number of candidates passed to the sink.
long enumerate_candidates(const Surface& km, const Surface& ln, const EnumerationOptions& opt,
                          const std::function<bool(const MeshHomeoCandidate&)>& sink);
std::vector<MeshHomeoCandidate> enumerate_candidates(const Surface& km, const Surface& ln,
                                                     const EnumerationOptions& opt);

/// Boundary chains run counterclockwise along the boundary of L^n and cover it exactly
/// once, edges sharing an endpoint map to chains sharing the corresponding endpoint,
/// and chains meet nowhere else.
bool is_valid_mesh_homeo(const MeshHomeoCandidate& c, const Surface& km, const Surface& ln);

/// Triangles of L^n assigned to each triangle of K^m. Throws InputError for an invalid
/// candidate or when the regions do not partition L^n.
std::vector<std::vector<int>> face_regions(const MeshHomeoCandidate& c, const Surface& km, const Surface& ln);

double evaluate_delta(const MeshHomeoCandidate& c, const Surface& fm, const Surface& gn);
double evaluate_delta(const MeshHomeoCandidate& c, const Surface& fm, const Surface& gn,
                      const std::vector<std::vector<int>>& regions);

/// Identity assignment when km and ln share their triangulation.
bool same_triangulation(const Surface& km, const Surface& ln);
MeshHomeoCandidate identity_candidate(const Surface& km);

struct Budget {
  int max_pairs = 16;
  long max_candidates = 100;  // per (m, n) pair
  int max_chain_length = 3;
  double wall_clock_seconds = 30.0;
  int max_level = 3;          // largest subdivision level for either surface
  long max_search_steps = 2'000'000;
  bool pairs_m_2m = false;
  EnumerationMode mode = EnumerationMode::Prune;
};

struct SemiBound {
  double value;
  int m, n;
  long candidate_index;
};

/// Pairs (m, n) visited in order: by m + n, then m; or (m, 2m) when pairs_m_2m.
std::vector<std::pair<int, int>> semi_pair_order(const Budget& b);

/// Running minimum of evaluate_delta over valid candidates, emitted on every strict
/// decrease. Returns all emitted bounds; `sink` (optional) sees them as they appear.
std::vector<SemiBound> semi_compute_stream(const Surface& f, const Surface& g, const Budget& budget,
                                           const std::function<void(const SemiBound&)>& sink = {});

}  // namespace frechet

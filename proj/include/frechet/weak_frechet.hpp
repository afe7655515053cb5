#pragma once

#include <optional>
#include <vector>

#include "frechet/critical_values.hpp"
#include "frechet/free_space.hpp"

namespace frechet {

enum class SearchMode { ExactCriticals, Bisection };

const char* to_string(SearchMode m);

struct Probe {
  double eps;
  bool answer;
};

struct WeakFrechetResult {
  double distance = 0.0;
  double witness_eps = 0.0;
  std::vector<CellId> witness_component;
  SearchMode mode = SearchMode::ExactCriticals;
  std::vector<Probe> probes;
  double bracket_lo = 0.0, bracket_hi = 0.0;  // consecutive C1 values around the distance
  std::optional<CriticalValue> matched;       // enumerated value equal to the distance
  int c1_count = 0, c2_count = 0;
};

/// Is the weak Frechet distance at most eps? On success the extensive component is
/// stored in `witness` when given.
bool decide(const SurfacePair& p, double eps, const Tolerance& tol = {}, int threads = 1,
            std::vector<CellId>* witness = nullptr);
bool decide(const Surface& f, const Surface& g, double eps, const Tolerance& tol = {});

WeakFrechetResult compute(const SurfacePair& p, SearchMode mode, const Tolerance& tol = {}, int threads = 1);
WeakFrechetResult compute(const Surface& f, const Surface& g, SearchMode mode, const Tolerance& tol = {});

/// Largest distance between two image vertices of either surface.
double image_diameter(const SurfacePair& p);

struct HausdorffBounds {
  double lower = 0.0, upper = 0.0;
};

/// Bounds on the Hausdorff distance of the two images from lattice samples whose
/// spacing (sub-triangle diameter) is at most `density`.
HausdorffBounds hausdorff_sampled(const Surface& f, const Surface& g, double density);

}  // namespace frechet

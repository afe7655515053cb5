#pragma once

#include <string>
#include <vector>

#include "frechet/free_space.hpp"

namespace frechet {

enum class CriticalKind { T1, T2a, T2b, T2c, T2d };

const char* to_string(CriticalKind k);

/// Candidate eps with the simplices that generated it. `side` names the surface of
/// the first simplex ('K' for f, 'L' for g); `simplices` lists indices in the order
/// described by `what` (e.g. "edge,tri" or "tri,tri,tri,tri").
struct CriticalValue {
  double value = 0.0;
  CriticalKind kind = CriticalKind::T1;
  char side = 'K';
  std::string what;
  std::vector<int> simplices;
  std::vector<CriticalKind> merged_kinds;  // kinds of all values deduplicated into this one
};

/// Types T1, T2a, T2b, T2d, sorted ascending and deduplicated at 10 * tolerance.
std::vector<CriticalValue> critical_values_C1(const SurfacePair& p, const Tolerance& tol = {}, int threads = 1);

/// Type T2c values in [lo, hi], sorted and deduplicated.
std::vector<CriticalValue> critical_values_2c(const SurfacePair& p, double lo, double hi, const Tolerance& tol = {},
                                              int threads = 1);

/// Sort by value and collapse runs of values within 10 * tolerance of the run's first value.
/// The survivor of a run is its first closed-form value (T1, T2a, T2d) when there is one.
void sort_and_dedupe(std::vector<CriticalValue>& v, const Tolerance& tol);

}  // namespace frechet

#pragma once

#include <vector>

#include "frechet/tolerance.hpp"
#include "frechet/vec.hpp"

namespace frechet {

/// Polygonal curve in R^2 (z = 0) or R^3.
struct PolyCurve {
  int dimension = 2;
  std::vector<Vec3> vertices;

  int segments() const { return static_cast<int>(vertices.size()) - 1; }
  Vec3 at(double s) const;  // s in [0, segments()]
};

/// Throws InputError unless the curve has at least two finite vertices.
void require_valid(const PolyCurve& c);
PolyCurve reversed(const PolyCurve& c);

struct FreeInterval {
  double lo = 1.0, hi = 0.0;  // empty when lo > hi
  bool empty() const { return lo > hi; }
};

/// Free intervals on the cell boundaries of the curve free-space diagram.
/// vertical[i][j]: f vertex i against g segment j (interval in g's parameter);
/// horizontal[i][j]: g vertex j against f segment i (interval in f's parameter).
struct CurveFreeSpace {
  double eps = 0.0;
  int n = 0, m = 0;  // segments of f and g
  std::vector<std::vector<FreeInterval>> vertical;    // (n + 1) x m
  std::vector<std::vector<FreeInterval>> horizontal;  // n x (m + 1)
};

CurveFreeSpace curve_free_space(const PolyCurve& f, const PolyCurve& g, double eps, const Tolerance& tol = {});

bool curve_decide_frechet(const PolyCurve& f, const PolyCurve& g, double eps, const Tolerance& tol = {});
bool curve_decide_weak(const PolyCurve& f, const PolyCurve& g, double eps, const Tolerance& tol = {});

enum class CurveVariant { Frechet, Weak };

/// Smallest eps with a positive decision, by bisection from [0, max vertex distance].
double curve_compute(const PolyCurve& f, const PolyCurve& g, CurveVariant variant, const Tolerance& tol = {});

}  // namespace frechet

#pragma once

#include <algorithm>
#include <cmath>

namespace frechet {

/// Comparison policy used for every floating-point decision in the library.
/// Two values are equal when they differ by at most max(abs, rel * max(|a|, |b|)).
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  /// Throws InputError unless rel > 0 and abs >= 0.
  void check() const;

  double slack(double a, double b) const {
    return std::max(abs, rel * std::max(std::fabs(a), std::fabs(b)));
  }
  Tolerance scaled(double factor) const { return {rel * factor, abs * factor}; }
};

enum class Ordering { Less, Equal, Greater };

/// Tolerance-aware three-way comparison. Throws InputError on NaN.
Ordering cmp(double a, double b, const Tolerance& tol);

inline bool tol_equal(double a, double b, const Tolerance& tol) {
  return cmp(a, b, tol) == Ordering::Equal;
}
/// a <= b, counting tolerance-equal values as satisfied.
inline bool tol_leq(double a, double b, const Tolerance& tol) {
  return cmp(a, b, tol) != Ordering::Greater;
}

}  // namespace frechet

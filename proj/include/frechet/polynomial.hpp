#pragma once

#include <array>
#include <initializer_list>
#include <span>
#include <vector>

#include "frechet/tolerance.hpp"

namespace frechet {

/// Real polynomial of degree at most four, coefficients lowest degree first.
class Polynomial {
 public:
  static constexpr int kMaxDegree = 4;

  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs);
  explicit Polynomial(std::span<const double> coeffs);

  /// Degree after trimming exact trailing zeros; -1 for the zero polynomial.
  int degree() const { return degree_; }
  bool is_zero() const { return degree_ < 0; }
  double coeff(int i) const { return i <= degree_ && i >= 0 ? c_[i] : 0.0; }
  double operator()(double x) const;
  /// Sum of |c_i| |x|^i, the scale against which evaluation error is judged.
  double magnitude(double x) const;
  double coeff_norm1() const;
  Polynomial derivative() const;

 private:
  void trim();
  std::array<double, kMaxDegree + 1> c_{};
  int degree_ = -1;
};

/// All real roots of p in [lo, hi], sorted, with roots closer than 10 * tol merged.
/// Isolation splits the interval at the roots of p' (recursively) so that p is
/// monotone on each piece, then bisects every sign change. Critical points where
/// p vanishes to rounding level are reported as (tangential) roots.
/// Throws NumericError("degenerate polynomial") for the zero polynomial.
std::vector<double> real_roots(const Polynomial& p, double lo, double hi,
                               const Tolerance& tol = {});

/// Closed-form real roots of a2 x^2 + a1 x + a0 = 0 (any of the coefficients may vanish).
/// Returns an empty vector when the equation is identically satisfied; callers that
/// need to distinguish that case check the coefficients themselves.
std::vector<double> solve_quadratic(double a2, double a1, double a0);

}  // namespace frechet

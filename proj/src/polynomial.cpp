#include "frechet/polynomial.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "frechet/error.hpp"

namespace frechet {

Polynomial::Polynomial(std::initializer_list<double> coeffs)
    : Polynomial(std::span<const double>(coeffs.begin(), coeffs.size())) {}

Polynomial::Polynomial(std::span<const double> coeffs) {
  if (coeffs.size() > c_.size()) {
    for (std::size_t i = c_.size(); i < coeffs.size(); ++i)
      if (coeffs[i] != 0.0) throw InputError("polynomial: degree exceeds 4");
  }
  for (std::size_t i = 0; i < std::min(coeffs.size(), c_.size()); ++i) c_[i] = coeffs[i];
  trim();
}

void Polynomial::trim() {
  degree_ = kMaxDegree;
  while (degree_ >= 0 && c_[degree_] == 0.0) --degree_;
}

double Polynomial::operator()(double x) const {
  double r = 0.0;
  for (int i = degree_; i >= 0; --i) r = r * x + c_[i];
  return r;
}

double Polynomial::magnitude(double x) const {
  double r = 0.0;
  const double ax = std::fabs(x);
  for (int i = degree_; i >= 0; --i) r = r * ax + std::fabs(c_[i]);
  return r;
}

double Polynomial::coeff_norm1() const {
  double s = 0.0;
  for (int i = 0; i <= degree_; ++i) s += std::fabs(c_[i]);
  return s;
}

Polynomial Polynomial::derivative() const {
  std::array<double, kMaxDegree + 1> d{};
  for (int i = 1; i <= degree_; ++i) d[i - 1] = c_[i] * i;
  return Polynomial(std::span<const double>(d.data(), d.size()));
}

namespace {

// Root of a polynomial that is monotone on [a, b] with opposite signs at the ends.
double bisect_monotone(const Polynomial& p, double a, double b, double fa) {
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = p(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return std::fabs(p(a)) <= std::fabs(p(b)) ? a : b;
}

bool vanishes(const Polynomial& p, double x) {
  return std::fabs(p(x)) <= 64.0 * DBL_EPSILON * p.magnitude(x);
}

std::vector<double> roots_unmerged(const Polynomial& p, double lo, double hi) {
  std::vector<double> out;
  if (p.degree() == 0) return out;
  if (p.degree() == 1) {
    const double r = -p.coeff(0) / p.coeff(1);
    if (r >= lo && r <= hi) out.push_back(r);
    return out;
  }
  std::vector<double> pts;
  pts.push_back(lo);
  for (double c : roots_unmerged(p.derivative(), lo, hi))
    if (c > lo && c < hi) pts.push_back(c);
  pts.push_back(hi);
  for (double x : pts)
    if (vanishes(p, x)) out.push_back(x);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i], b = pts[i + 1];
    const double fa = p(a), fb = p(b);
    if (fa == 0.0 || fb == 0.0) continue;
    if ((fa < 0.0) != (fb < 0.0)) out.push_back(bisect_monotone(p, a, b, fa));
  }
  return out;
}

}  // namespace

std::vector<double> real_roots(const Polynomial& p, double lo, double hi, const Tolerance& tol) {
  if (p.is_zero()) throw NumericError("degenerate polynomial");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw InputError("real_roots: interval must be finite");
  if (lo > hi) std::swap(lo, hi);
  std::vector<double> raw = roots_unmerged(p, lo, hi);
  std::sort(raw.begin(), raw.end());
  std::vector<double> out;
  for (double r : raw) {
    if (!out.empty() && std::fabs(r - out.back()) <= 10.0 * tol.slack(r, out.back())) {
      // keep the better representative of a merged cluster
      if (std::fabs(p(r)) < std::fabs(p(out.back()))) out.back() = r;
      continue;
    }
    out.push_back(r);
  }
  return out;
}

std::vector<double> solve_quadratic(double a2, double a1, double a0) {
  std::vector<double> out;
  const double scale = std::max({std::fabs(a2), std::fabs(a1), std::fabs(a0)});
  if (scale == 0.0) return out;
  if (std::fabs(a2) <= 1e-14 * scale) {
    if (std::fabs(a1) <= 1e-14 * scale) return out;
    out.push_back(-a0 / a1);
    return out;
  }
  double disc = a1 * a1 - 4.0 * a2 * a0;
  const double disc_scale = a1 * a1 + std::fabs(4.0 * a2 * a0);
  if (disc < 0.0) {
    if (disc < -16.0 * DBL_EPSILON * disc_scale) return out;
    disc = 0.0;
  }
  if (disc == 0.0) {
    out.push_back(-a1 / (2.0 * a2));
    return out;
  }
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (a1 + std::copysign(sq, a1));
  double r1 = q / a2;
  double r2 = q != 0.0 ? a0 / q : -r1;
  if (r1 > r2) std::swap(r1, r2);
  out.push_back(r1);
  out.push_back(r2);
  return out;
}

}  // namespace frechet

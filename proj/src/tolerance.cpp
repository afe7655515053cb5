#include "frechet/tolerance.hpp"

#include "frechet/error.hpp"

namespace frechet {

void Tolerance::check() const {
  if (!(rel > 0.0) || !std::isfinite(rel)) throw InputError("tolerance: rel must be positive");
  if (!(abs >= 0.0) || !std::isfinite(abs)) throw InputError("tolerance: abs must be nonnegative");
}

Ordering cmp(double a, double b, const Tolerance& tol) {
  if (std::isnan(a) || std::isnan(b)) throw InputError("cmp: NaN operand");
  if (std::fabs(a - b) <= tol.slack(a, b)) return Ordering::Equal;
  return a < b ? Ordering::Less : Ordering::Greater;
}

}  // namespace frechet

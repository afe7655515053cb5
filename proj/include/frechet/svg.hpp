#pragma once

#include <string>

#include "frechet/coverage.hpp"
#include "frechet/curve.hpp"

namespace frechet {

/// Target triangle, clipped arcs (sampled as dots, colored per partner) and one polygon
/// per arrangement face with class "face covered" or "face uncovered".
std::string arrangement_svg(const TriangleArrangement& a);

/// Free-space diagram of two curves: one rect per cell (class "cell"), each shaded by the
/// fraction of free samples on a `samples` x `samples` lattice, with the free boundary
/// intervals drawn as thick segments.
std::string curve_free_space_svg(const PolyCurve& f, const PolyCurve& g, double eps, const Tolerance& tol = {},
                                 int samples = 12);

}  // namespace frechet

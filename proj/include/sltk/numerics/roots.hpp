#pragma once

#include <cmath>
#include <cstddef>

#include "sltk/errors.hpp"

namespace sltk::num {

struct BisectionResult {
  double root = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  /// Midpoint evaluations, excluding the two bracket checks.
  std::size_t iterations = 0;
};

/// Bisection on a monotone function with a sign change in [lo, hi].
/// Stops once hi - lo <= tol, so it does at most ceil(log2((hi - lo) / tol))
/// midpoint evaluations.
template <class G>
BisectionResult bisect_monotone(G&& g, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw UsageError("bisect_monotone: tol must be positive");
  if (!(lo <= hi)) throw UsageError("bisect_monotone: bracket must satisfy lo <= hi");
  const double g_lo = g(lo);
  const double g_hi = g(hi);
  if (g_lo * g_hi > 0.0 || std::isnan(g_lo) || std::isnan(g_hi)) {
    throw UsageError("bisect_monotone: no sign change on bracket");
  }
  BisectionResult r{0.0, lo, hi, 0};
  if (g_lo == 0.0) {
    r.root = lo;
    r.hi = lo;
    return r;
  }
  if (g_hi == 0.0) {
    r.root = hi;
    r.lo = hi;
    return r;
  }
  const bool increasing = g_lo < 0.0;
  while (r.hi - r.lo > tol) {
    const double mid = 0.5 * (r.lo + r.hi);
    if (mid <= r.lo || mid >= r.hi) break;  // bracket at floating-point resolution
    const double gm = g(mid);
    ++r.iterations;
    if (gm == 0.0) {
      r.lo = r.hi = mid;
      break;
    }
    if ((gm < 0.0) == increasing) {
      r.lo = mid;
    } else {
      r.hi = mid;
    }
  }
  r.root = 0.5 * (r.lo + r.hi);
  return r;
}

}  // namespace sltk::num

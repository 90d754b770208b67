#pragma once

// First-order eigenvalue perturbation: lambda_n(qt + eps p) - lambda~_n
// = eps (p y~_n, y~_n) + O(eps^2). The sweep records the remainder for
// each eps and the least-squares slope of log remainder against log eps.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "sltk/potential/functionals.hpp"
#include "sltk/solver/solver.hpp"

namespace sltk {

struct PerturbationRow {
  double eps = 0.0;
  double lambda = 0.0;       ///< lambda_n(qt + eps p)
  double first_order = 0.0;  ///< eps (p y~_n, y~_n)
  double remainder = 0.0;    ///< |lambda - lambda~_n - first_order|
};

struct PerturbationStudy {
  int n = 1;
  double lambda_ref = 0.0;
  double inner = 0.0;  ///< (p y~_n, y~_n)
  std::vector<PerturbationRow> rows;
  /// +inf when every remainder is at rounding level
  double slope = 0.0;
};

/// Solver settings tight enough to resolve remainders of order eps^2 at eps = 1e-3.
inline SolverOptions tight_solver_options(SolverOptions base = {}) {
  base.tol.ode_rel = 1e-13;
  base.tol.ode_abs = 1e-15;
  base.tol.root_tol = 1e-13;
  base.tol.quad_target = 1e-13;
  return base;
}

/// Least-squares slope of log|r| against log(eps); +inf if all r are below `floor`.
inline double loglog_slope(const std::vector<double>& eps, const std::vector<double>& r, double floor = 1e-14) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(r[i] > floor)) continue;
    const double x = std::log(eps[i]), y = std::log(r[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m == 0) return std::numeric_limits<double>::infinity();
  if (m < 2) throw NumericalError("slope needs at least two remainders above the rounding floor");
  const double mm = static_cast<double>(m);
  return (mm * sxy - sx * sy) / (mm * sxx - sx * sx);
}

inline PerturbationStudy perturbation_study(const Potential& qt, const Potential& p, const BoundaryCondition& bc, int n,
                                            const std::vector<double>& eps, const SolverOptions& opts) {
  if (n < 1) throw UsageError("index n must be >= 1, got " + std::to_string(n));
  if (eps.size() < 2) throw UsageError("perturbation study needs at least two eps values");
  for (double e : eps) {
    if (!(e > 0.0)) throw UsageError("eps values must be positive");
  }
  const auto k = static_cast<std::size_t>(n - 1);
  PerturbationStudy s;
  s.n = n;
  const auto ref = spectrum(qt, bc, k, opts);
  s.lambda_ref = ref.pairs[k].eigenvalue;
  s.inner = weighted_inner_product(p, ref.pairs[k].eigenfunction);
  std::vector<double> rem;
  for (double e : eps) {
    PerturbationRow row;
    row.eps = e;
    row.lambda = eigenvalue(add_scaled(qt, e, p), bc, k, opts);
    row.first_order = e * s.inner;
    row.remainder = std::abs(row.lambda - s.lambda_ref - row.first_order);
    rem.push_back(row.remainder);
    s.rows.push_back(row);
  }
  s.slope = loglog_slope(eps, rem);
  return s;
}

}  // namespace sltk

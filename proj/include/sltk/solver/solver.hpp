#pragma once

/**
 * Eigenpairs of -y'' + q y = lambda y on (0,1).
 *
 * Two independent backends:
 *  - shooting: scaled Prüfer angle, geometric bracket expansion around the
 *    asymptotic seed, bisection on the monotone mismatch. Separated
 *    conditions only.
 *  - matrix: finite differences (see matrix.hpp). Eigenvalues are
 *    extrapolated in h^2 over a ladder of grid sizes; eigenvectors come from
 *    the finest grid.
 *
 * Indices are 0-based; for separated conditions index k has k interior zeros.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "sltk/errors.hpp"
#include "sltk/numerics/quadrature.hpp"
#include "sltk/numerics/roots.hpp"
#include "sltk/numerics/tolerance.hpp"
#include "sltk/numerics/tridiag.hpp"
#include "sltk/potential/functionals.hpp"
#include "sltk/solver/boundary.hpp"
#include "sltk/solver/matrix.hpp"
#include "sltk/solver/prufer.hpp"

namespace sltk {

enum class Backend { automatic, shooting, matrix };

inline std::string backend_name(Backend b) {
  switch (b) {
    case Backend::shooting:
      return "shooting";
    case Backend::matrix:
      return "matrix";
    case Backend::automatic:
      break;
  }
  return "auto";
}

inline Backend parse_backend(std::string_view s) {
  if (s == "shooting") return Backend::shooting;
  if (s == "matrix") return Backend::matrix;
  if (s == "auto") return Backend::automatic;
  throw UsageError("unknown backend '" + std::string(s) + "' (expected shooting, matrix or auto)");
}

struct SolverOptions {
  Backend backend = Backend::automatic;
  num::ToleranceBundle tol{};
  std::size_t grid_size = num::kDefaultQuadratureNodes;  ///< eigenfunction samples, odd
  /// Matrix sizes for the h^2 extrapolation; the last one also gives the eigenvectors.
  std::vector<std::size_t> matrix_sizes{256, 512, 1024};
  bool parallel = true;

  void validate() const {
    tol.validate();
    if (grid_size < 3 || grid_size % 2 == 0) throw UsageError("grid size must be odd and >= 3");
    if (matrix_sizes.empty()) throw UsageError("matrix_sizes must not be empty");
    for (auto n : matrix_sizes) {
      if (n < 16) throw UsageError("matrix sizes must be >= 16");
    }
  }
};

struct EigenPair {
  std::size_t index = 0;
  double eigenvalue = 0.0;
  std::vector<double> eigenfunction;  ///< uniform samples on [0,1], Simpson norm 1
  std::size_t node_count = 0;
  Backend backend = Backend::shooting;
};

struct SpectralData {
  Potential q;
  BoundaryCondition bc;
  std::vector<EigenPair> pairs;

  std::vector<double> eigenvalues() const {
    std::vector<double> v;
    v.reserve(pairs.size());
    for (const auto& p : pairs) v.push_back(p.eigenvalue);
    return v;
  }
};

inline Backend resolve_backend(const BoundaryCondition& bc, Backend requested) {
  if (requested == Backend::automatic) return bc.is_separated() ? Backend::shooting : Backend::matrix;
  if (requested == Backend::shooting && !bc.is_separated()) {
    throw UnsupportedError("the shooting backend supports separated boundary conditions only; use the matrix backend for " +
                           bc.name());
  }
  return requested;
}

/// Sign changes strictly inside (0,1), ignoring one grid cell at each end.
inline std::size_t node_count(std::span<const double> y) {
  if (y.size() < 5) return 0;
  std::size_t count = 0;
  int last_sign = 0;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    const int s = y[i] > 0.0 ? 1 : (y[i] < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) ++count;
    last_sign = s;
  }
  return count;
}

/// \int_0^1 w y^2 dx with y sampled uniformly (odd count). Each Simpson
/// panel integrates the quadratic interpolant of y^2 against w; panels
/// containing breakpoints of a piecewise-constant w are split there and the
/// pieces are integrated exactly with three-point Gauss rules.
inline double weighted_inner_product(const Potential& w, std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 3 || n % 2 == 0) throw UsageError("weighted_inner_product: need an odd number >= 3 of samples");
  const double h = 1.0 / static_cast<double>(n - 1);
  const auto* pw = w.as_piecewise();
  if (!pw) {
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = w(std::min(1.0, static_cast<double>(i) * h)) * y[i] * y[i];
    return num::simpson(f).value;
  }
  const double g = std::sqrt(3.0 / 5.0);
  const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const double gx[3] = {-g, 0.0, g};
  double total = 0.0;
  for (std::size_t i = 0; i + 2 < n; i += 2) {
    const double a = static_cast<double>(i) * h;
    const double b = i + 3 == n ? 1.0 : static_cast<double>(i + 2) * h;
    const double f0 = y[i] * y[i], f1 = y[i + 1] * y[i + 1], f2 = y[i + 2] * y[i + 2];
    auto quad = [&](double x) {
      const double t = (x - a) / h;  // 0, 1, 2 at the panel nodes
      return f0 * (t - 1.0) * (t - 2.0) / 2.0 - f1 * t * (t - 2.0) + f2 * t * (t - 1.0) / 2.0;
    };
    std::vector<double> cuts{a};
    for (double bp : pw->breakpoints) {
      if (bp > a && bp < b) cuts.push_back(bp);
    }
    cuts.push_back(b);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double lo = cuts[c], hi = cuts[c + 1];
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      const double wv = pw->values[Potential::cell_index(*pw, mid)];
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += gw[k] * quad(mid + half * gx[k]);
      total += wv * s * half;
    }
  }
  return total;
}

namespace detail {

inline double asymptotic_root(const BoundaryCondition& bc, std::size_t k) {
  const auto& a = bc.angles();
  double m = static_cast<double>(k) + 1.0;
  if (a.alpha != 0.0) m -= 0.5;
  if (a.beta != 0.0) m -= 0.5;
  return std::max(0.0, m) * std::numbers::pi;
}

inline void normalise_samples(std::vector<double>& y) {
  std::vector<double> sq(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) sq[i] = y[i] * y[i];
  const double norm = std::sqrt(num::simpson(sq).value);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericalError("eigenfunction has zero or non-finite norm");
  for (double& v : y) v /= norm;
}

/// y(0) > 0 when y(0) is not zero, otherwise y'(0) > 0.
inline void fix_sign(std::vector<double>& y) {
  double peak = 0.0;
  for (double v : y) peak = std::max(peak, std::abs(v));
  const double ref = std::abs(y.front()) > 1e-8 * peak ? y.front() : y[1] - y.front();
  if (ref < 0.0) {
    for (double& v : y) v = -v;
  }
}

}  // namespace detail

/// Scale used by the shooting search for index k.
inline double shooting_scale(const BoundaryCondition& bc, std::size_t k) {
  return std::max(1.0, detail::asymptotic_root(bc, k));
}

/// k-th eigenvalue by Prüfer shooting (separated conditions).
inline double shooting_eigenvalue(const Potential& q, const BoundaryCondition& bc, std::size_t k,
                                  const num::ToleranceBundle& tol = {}) {
  const double root = detail::asymptotic_root(bc, k);
  const double scale = shooting_scale(bc, k);
  const double target = static_cast<double>(k) * std::numbers::pi;
  auto g = [&](double lambda) { return prufer_mismatch(q, bc, lambda, tol, scale).mismatch - target; };
  const double seed = root * root + integral(q);
  double width = std::numbers::pi * std::numbers::pi * (static_cast<double>(k) + 1.0);
  double lo = seed - width, hi = seed + width;
  constexpr int kMaxExpansions = 60;
  int expansions = 0;
  while (g(lo) > 0.0) {
    if (++expansions > kMaxExpansions) {
      throw SearchError("eigenvalue " + std::to_string(k) + ": no lower bracket after " +
                        std::to_string(kMaxExpansions) + " expansions below " + format_double(lo));
    }
    hi = lo;
    width *= 2.0;
    lo -= width;
  }
  width = std::numbers::pi * std::numbers::pi * (static_cast<double>(k) + 1.0);
  expansions = 0;
  while (g(hi) < 0.0) {
    if (++expansions > kMaxExpansions) {
      throw SearchError("eigenvalue " + std::to_string(k) + ": no upper bracket after " +
                        std::to_string(kMaxExpansions) + " expansions above " + format_double(hi));
    }
    lo = hi;
    width *= 2.0;
    hi += width;
  }
  return num::bisect_monotone(g, lo, hi, tol.root_tol).root;
}

/// Raw finite-difference spectrum on one grid with n unknowns.
inline SpectralData matrix_eigen(const Potential& q, const BoundaryCondition& bc, std::size_t n, std::size_t k_max,
                                 std::size_t grid_size = num::kDefaultQuadratureNodes) {
  if (k_max >= n) throw UsageError("matrix_eigen: k_max must be below N");
  const auto d = discretize(q, bc, n);
  const auto eig = num::tridiag_eigen(d.matrix, k_max);
  const auto grid = num::uniform_grid(grid_size);
  SpectralData out{q, bc, {}};
  for (std::size_t k = 0; k <= k_max; ++k) {
    EigenPair p;
    p.index = k;
    p.eigenvalue = eig.values[k];
    p.eigenfunction = interpolate_eigenvector(d, eig.vectors[k], grid);
    detail::normalise_samples(p.eigenfunction);
    detail::fix_sign(p.eigenfunction);
    p.node_count = node_count(p.eigenfunction);
    p.backend = Backend::matrix;
    out.pairs.push_back(std::move(p));
  }
  return out;
}

/// Matrix eigenvalues 0..k_max extrapolated in h^2 over the option's grid ladder.
inline std::vector<double> matrix_eigenvalues(const Potential& q, const BoundaryCondition& bc, std::size_t k_max,
                                              const SolverOptions& opts = {}) {
  const auto& sizes = opts.matrix_sizes;
  std::vector<std::vector<double>> per_size;
  std::vector<double> hs;
  for (std::size_t n : sizes) {
    const auto d = discretize(q, bc, n);
    per_size.push_back(num::tridiag_eigen(d.matrix, k_max).values);
    hs.push_back(d.h);
  }
  std::vector<double> out(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) {
    std::vector<double> v;
    for (const auto& s : per_size) v.push_back(s[k]);
    out[k] = richardson_h2(hs, v);
  }
  return out;
}

/// k-th eigenvalue with the requested backend.
inline double eigenvalue(const Potential& q, const BoundaryCondition& bc, std::size_t k, const SolverOptions& opts = {}) {
  opts.validate();
  if (resolve_backend(bc, opts.backend) == Backend::shooting) return shooting_eigenvalue(q, bc, k, opts.tol);
  return matrix_eigenvalues(q, bc, k, opts).back();
}

namespace detail {

inline EigenPair shooting_pair(const Potential& q, const BoundaryCondition& bc, double lambda,
                               const SolverOptions& opts) {
  const double scale = std::max(1.0, std::sqrt(std::max(0.0, lambda - integral(q))));
  const auto grid = num::uniform_grid(opts.grid_size);
  auto prof = prufer_profile(q, bc, lambda, grid, opts.tol, scale);
  constexpr double kMismatchTol = 1e-6;
  if (std::abs(prof.end.folded) > kMismatchTol) {
    throw UsageError("lambda = " + format_double(lambda) + " is not an eigenvalue: boundary mismatch " +
                     format_double(prof.end.folded) + " rad");
  }
  EigenPair p;
  p.index = static_cast<std::size_t>(std::max(0.0, std::round(prof.end.mismatch / std::numbers::pi)));
  p.eigenvalue = lambda;
  p.eigenfunction = std::move(prof.y);
  normalise_samples(p.eigenfunction);
  fix_sign(p.eigenfunction);
  p.node_count = node_count(p.eigenfunction);
  p.backend = Backend::shooting;
  return p;
}

/// Replaces raw matrix eigenvalues by extrapolated ones.
inline SpectralData matrix_spectrum(const Potential& q, const BoundaryCondition& bc, std::size_t k_max,
                                    const SolverOptions& opts) {
  auto data = matrix_eigen(q, bc, opts.matrix_sizes.back(), k_max, opts.grid_size);
  const auto vals = matrix_eigenvalues(q, bc, k_max, opts);
  for (std::size_t k = 0; k <= k_max; ++k) data.pairs[k].eigenvalue = vals[k];
  return data;
}

}  // namespace detail

/// Normalised eigenfunction for an eigenvalue lambda of (q, bc).
inline EigenPair eigenfunction(const Potential& q, const BoundaryCondition& bc, double lambda,
                               const SolverOptions& opts = {}) {
  opts.validate();
  if (resolve_backend(bc, opts.backend) == Backend::shooting) return detail::shooting_pair(q, bc, lambda, opts);
  const double tol = 1e-6 * std::max(1.0, std::abs(lambda));
  for (std::size_t k_max = 8;; k_max *= 2) {
    if (k_max >= opts.matrix_sizes.front()) break;
    const auto vals = matrix_eigenvalues(q, bc, k_max, opts);
    if (vals.back() < lambda - tol) continue;
    for (std::size_t k = 0; k <= k_max; ++k) {
      if (std::abs(vals[k] - lambda) <= tol) {
        auto data = detail::matrix_spectrum(q, bc, k, opts);
        return data.pairs[k];
      }
    }
    break;
  }
  throw UsageError("lambda = " + format_double(lambda) + " is not an eigenvalue of the matrix backend");
}

/// Eigenpairs 0..k_max, ascending, double eigenvalues listed twice.
inline SpectralData spectrum(const Potential& q, const BoundaryCondition& bc, std::size_t k_max,
                             const SolverOptions& opts = {}) {
  opts.validate();
  if (k_max > 50) throw UsageError("spectrum: k_max above 50 is not supported");
  if (resolve_backend(bc, opts.backend) == Backend::matrix) return detail::matrix_spectrum(q, bc, k_max, opts);

  auto solve = [&](std::size_t k) {
    const double lambda = shooting_eigenvalue(q, bc, k, opts.tol);
    auto pair = detail::shooting_pair(q, bc, lambda, opts);
    pair.index = k;
    return pair;
  };
  SpectralData out{q, bc, std::vector<EigenPair>(k_max + 1)};
  if (opts.parallel && k_max > 0) {
    std::vector<std::future<EigenPair>> jobs;
    for (std::size_t k = 0; k <= k_max; ++k) jobs.push_back(std::async(std::launch::async, solve, k));
    for (std::size_t k = 0; k <= k_max; ++k) out.pairs[k] = jobs[k].get();
  } else {
    for (std::size_t k = 0; k <= k_max; ++k) out.pairs[k] = solve(k);
  }
  return out;
}

/// Bound on |lambda - lambda_h| for the raw matrix eigenvalue on spacing h:
/// the second difference misses h^2/12 y'''' = h^2/12 ((q - lambda)^2 y + ...),
/// so h^2/6 max|lambda - q|^2 with a factor two for the boundary rows and
/// the cell averaging of jumps.
inline double matrix_error_bound(const Potential& q, double lambda, double h) {
  const double m = std::max(std::abs(lambda - ess_inf(q)), std::abs(lambda - ess_sup(q)));
  return h * h * m * m / 6.0;
}

/// C(bc) in lambda_0(q, bc) >= ess_inf(q) - C(bc): zero unless the free
/// problem has a negative ground state (Robin-type ends).
inline double lower_bound_constant(const BoundaryCondition& bc) {
  SolverOptions opts;
  opts.parallel = false;
  return std::max(0.0, -eigenvalue(Potential::zero(), bc, 0, opts));
}

}  // namespace sltk

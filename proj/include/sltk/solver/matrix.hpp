#pragma once

/**
 * Finite-difference backend: central second differences for -y'' + q y on a
 * uniform node set, giving a symmetric tridiagonal matrix (plus a corner
 * entry for periodic/antiperiodic conditions).
 *
 * Node layout, with h the spacing:
 *   Dirichlet end        boundary node omitted (y = 0 there)
 *   other separated end  boundary node kept; y' = cot(angle) y through a
 *                        ghost point, the row symmetrised with weight 1/2
 *   coupled              x_i = i h, i = 0..N-1, h = 1/N
 *
 * The symmetrised boundary rows read
 *   x = 0:  2/h^2 + 2 cot(alpha)/h + q_0,  off-diagonal -sqrt(2)/h^2
 *   x = 1:  2/h^2 - 2 cot(beta)/h + q_N,   off-diagonal -sqrt(2)/h^2
 * and the eigenvector of the original problem is y = W^{-1/2} z.
 *
 * Piecewise-constant potentials enter as averages over the dual cells
 * [x_i - h/2, x_i + h/2]; other representations are sampled at the nodes.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "sltk/numerics/quadrature.hpp"
#include "sltk/numerics/tridiag.hpp"
#include "sltk/potential/potential.hpp"
#include "sltk/solver/boundary.hpp"

namespace sltk {

struct Discretization {
  num::SymTridiag matrix;
  double h = 0.0;
  double first_node = 0.0;            ///< abscissa of unknown 0
  std::vector<double> unscale;        ///< y_i = unscale[i] * z_i
  bool left_zero = false;             ///< Dirichlet at x = 0
  bool right_zero = false;            ///< Dirichlet at x = 1
  bool coupled = false;
  double coupling_sign = 1.0;         ///< y(x + 1) = sign * y(x) for coupled conditions
};

namespace detail {

/// Mean of a piecewise-constant potential over [a, b] within [0, 1].
inline double piecewise_mean(const PiecewiseConstant& p, double a, double b) {
  double s = 0.0;
  for (std::size_t j = 0; j < p.values.size(); ++j) {
    const double lo = std::max(a, p.breakpoints[j]);
    const double hi = std::min(b, p.breakpoints[j + 1]);
    if (hi > lo) s += p.values[j] * (hi - lo);
  }
  return s / (b - a);
}

/// Potential value attached to node x with dual cell half-width h/2.
inline double node_potential(const Potential& q, double x, double h, bool periodic) {
  const auto* p = q.as_piecewise();
  if (!p) return q(std::clamp(x, 0.0, 1.0));
  const double a = x - 0.5 * h, b = x + 0.5 * h;
  if (periodic && a < 0.0) {
    return (piecewise_mean(*p, 1.0 + a, 1.0) * (-a) + piecewise_mean(*p, 0.0, b) * b) / h;
  }
  const double lo = std::max(a, 0.0), hi = std::min(b, 1.0);
  return piecewise_mean(*p, lo, hi);
}

}  // namespace detail

/// Matrix with n unknowns for the problem (q, bc).
inline Discretization discretize(const Potential& q, const BoundaryCondition& bc, std::size_t n) {
  if (n < 16) throw UsageError("matrix backend: need N >= 16");
  Discretization d;
  auto& m = d.matrix;
  m.diagonal.assign(n, 0.0);
  m.off_diagonal.assign(n - 1, 0.0);
  d.unscale.assign(n, 1.0);

  if (!bc.is_separated()) {
    d.coupled = true;
    d.coupling_sign = bc.coupling() == Coupling::periodic ? 1.0 : -1.0;
    d.h = 1.0 / static_cast<double>(n);
    const double ih2 = 1.0 / (d.h * d.h);
    for (std::size_t i = 0; i < n; ++i) {
      m.diagonal[i] = 2.0 * ih2 + detail::node_potential(q, static_cast<double>(i) * d.h, d.h, true);
    }
    std::fill(m.off_diagonal.begin(), m.off_diagonal.end(), -ih2);
    m.corner = -d.coupling_sign * ih2;
    return d;
  }

  const auto& ang = bc.angles();
  d.left_zero = ang.alpha == 0.0;
  d.right_zero = ang.beta == 0.0;
  const std::size_t gaps = n - 1 + (d.left_zero ? 1 : 0) + (d.right_zero ? 1 : 0);
  d.h = 1.0 / static_cast<double>(gaps);
  d.first_node = d.left_zero ? d.h : 0.0;
  const double h = d.h, ih2 = 1.0 / (h * h);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i + 1 == n && !d.right_zero ? 1.0 : d.first_node + static_cast<double>(i) * h;
    m.diagonal[i] = 2.0 * ih2 + detail::node_potential(q, x, h, false);
  }
  std::fill(m.off_diagonal.begin(), m.off_diagonal.end(), -ih2);
  if (!d.left_zero) {
    const double cot = std::cos(ang.alpha) / std::sin(ang.alpha);
    m.diagonal[0] += 2.0 * cot / h;
    m.off_diagonal[0] = -std::numbers::sqrt2 * ih2;
    d.unscale[0] = std::numbers::sqrt2;
  }
  if (!d.right_zero) {
    const double cot = std::cos(ang.beta) / std::sin(ang.beta);
    m.diagonal[n - 1] -= 2.0 * cot / h;
    m.off_diagonal[n - 2] = -std::numbers::sqrt2 * ih2;
    d.unscale[n - 1] = std::numbers::sqrt2;
  }
  return d;
}

/// Samples of the grid function `z` (matrix eigenvector) on `grid`, by
/// four-point Lagrange interpolation over the node values including the
/// known boundary values and, for coupled conditions, periodic ghosts.
inline std::vector<double> interpolate_eigenvector(const Discretization& d, const std::vector<double>& z,
                                                   const std::vector<double>& grid) {
  const std::size_t n = z.size();
  std::vector<double> ys;
  double x0 = d.first_node;
  if (d.coupled) {
    const double s = d.coupling_sign;
    x0 = -d.h;
    ys.push_back(s * z[n - 1]);
    for (std::size_t i = 0; i < n; ++i) ys.push_back(z[i]);
    ys.push_back(s * z[0]);
    ys.push_back(s * z[1]);
  } else {
    if (d.left_zero) {
      ys.push_back(0.0);
      x0 = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) ys.push_back(d.unscale[i] * z[i]);
    if (d.right_zero) ys.push_back(0.0);
  }
  const std::size_t count = ys.size();
  std::vector<double> out(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double t = (grid[g] - x0) / d.h;
    auto base = static_cast<std::ptrdiff_t>(std::floor(t)) - 1;
    base = std::clamp<std::ptrdiff_t>(base, 0, static_cast<std::ptrdiff_t>(count) - 4);
    double v = 0.0;
    for (std::ptrdiff_t a = 0; a < 4; ++a) {
      double w = 1.0;
      for (std::ptrdiff_t b = 0; b < 4; ++b) {
        if (b != a) w *= (t - static_cast<double>(base + b)) / static_cast<double>(a - b);
      }
      v += w * ys[static_cast<std::size_t>(base + a)];
    }
    out[g] = v;
  }
  return out;
}

/// Polynomial extrapolation in h^2 to h = 0 (Neville).
inline double richardson_h2(const std::vector<double>& h, const std::vector<double>& values) {
  std::vector<double> p = values;
  const std::size_t m = p.size();
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i) {
      const double ti = h[i] * h[i], tj = h[i - level] * h[i - level];
      p[i] = (ti * p[i - 1] - tj * p[i]) / (ti - tj);
      if (i == level) break;
    }
  }
  return p[m - 1];
}

}  // namespace sltk

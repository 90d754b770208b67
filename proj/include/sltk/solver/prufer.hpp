#pragma once

/**
 * Scaled Prüfer shooting for separated boundary conditions.
 *
 * With a constant scale S > 0 write S y = rho sin(phi), y' = rho cos(phi).
 * Then
 *     phi'        = S cos^2(phi) + (lambda - q)/S sin^2(phi)
 *     (ln rho)'   = (S^2 + q - lambda)/S sin(phi) cos(phi)
 * S = 1 is the classical transformation theta' = cos^2 + (lambda - q) sin^2.
 * The zeros of y are exactly the points where phi crosses a multiple of pi,
 * always upwards, and phi(1) is increasing in lambda for fixed S.
 * Choosing S near sqrt(lambda - q) makes phi' almost constant.
 */

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "sltk/numerics/ode.hpp"
#include "sltk/potential/potential.hpp"
#include "sltk/solver/boundary.hpp"

namespace sltk {

/// Scaled initial angle for cos(a) y - sin(a) y' = 0; maps [0, pi) onto [0, pi).
inline double prufer_start_angle(double alpha, double scale) {
  return std::atan2(scale * std::sin(alpha), std::cos(alpha));
}

/// Scaled end angle in (0, pi]; Dirichlet (beta = 0) maps to pi.
inline double prufer_end_angle(double beta, double scale) {
  if (beta == 0.0) return std::numbers::pi;
  return std::atan2(scale * std::sin(beta), std::cos(beta));
}

struct PruferMismatch {
  double theta_end = 0.0;
  /// theta(1) minus the end angle; the k-th eigenvalue is the root of mismatch - k pi.
  double mismatch = 0.0;
  /// mismatch reduced to (-pi/2, pi/2] around the nearest multiple of pi
  double folded = 0.0;
  /// interior zeros of the solution of the initial value problem
  int node_count = 0;
  std::size_t steps = 0;
};

inline int prufer_node_count(double theta_end) {
  constexpr double guard = 1e-8;
  const double m = std::ceil((theta_end - guard) / std::numbers::pi) - 1.0;
  return m > 0.0 ? static_cast<int>(m) : 0;
}

inline double fold_angle(double mismatch) {
  return mismatch - std::numbers::pi * std::round(mismatch / std::numbers::pi);
}

namespace detail {

inline auto prufer_angle_rhs(const Potential& q, double lambda, double scale) {
  return [&q, lambda, scale](std::size_t j, double x, const num::State<1>& t) {
    const double s = std::sin(t[0]), c = std::cos(t[0]);
    return num::State<1>{scale * c * c + (lambda - q.eval_on_segment(j, x)) / scale * s * s};
  };
}

inline auto prufer_full_rhs(const Potential& q, double lambda, double scale) {
  return [&q, lambda, scale](std::size_t j, double x, const num::State<2>& t) {
    const double s = std::sin(t[0]), c = std::cos(t[0]);
    const double mu = lambda - q.eval_on_segment(j, x);
    return num::State<2>{scale * c * c + mu / scale * s * s, (scale * scale - mu) / scale * s * c};
  };
}

}  // namespace detail

/// Integrates the angle from theta(0) = alpha (scaled) to x = 1.
inline PruferMismatch prufer_mismatch(const Potential& q, const BoundaryCondition& bc, double lambda,
                                      const num::ToleranceBundle& tol = {}, double scale = 1.0) {
  const auto& ang = bc.angles();
  if (!(scale > 0.0)) throw UsageError("prufer_mismatch: scale must be positive");
  const auto breaks = q.segment_breaks();
  const auto sol = num::integrate_segments<1>(detail::prufer_angle_rhs(q, lambda, scale), breaks,
                                              {prufer_start_angle(ang.alpha, scale)}, {}, tol);
  PruferMismatch r;
  r.theta_end = sol.final[0];
  r.mismatch = r.theta_end - prufer_end_angle(ang.beta, scale);
  r.folded = fold_angle(r.mismatch);
  r.node_count = prufer_node_count(r.theta_end);
  r.steps = sol.accepted_steps;
  return r;
}

struct ShootingProfile {
  std::vector<double> y;   ///< unnormalised samples
  std::vector<double> dy;  ///< derivative samples
  PruferMismatch end;
};

/// Solution of the initial value problem at the points `grid` (ascending, in [0,1]).
inline ShootingProfile prufer_profile(const Potential& q, const BoundaryCondition& bc, double lambda,
                                      std::span<const double> grid, const num::ToleranceBundle& tol = {},
                                      double scale = 1.0) {
  const auto& ang = bc.angles();
  const auto breaks = q.segment_breaks();
  const auto sol = num::integrate_segments<2>(detail::prufer_full_rhs(q, lambda, scale), breaks,
                                              {prufer_start_angle(ang.alpha, scale), 0.0}, grid, tol);
  ShootingProfile p;
  p.y.resize(grid.size());
  p.dy.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double rho = std::exp(sol.samples[i][1]);
    p.y[i] = rho * std::sin(sol.samples[i][0]) / scale;
    p.dy[i] = rho * std::cos(sol.samples[i][0]);
  }
  p.end.theta_end = sol.final[0];
  p.end.mismatch = p.end.theta_end - prufer_end_angle(ang.beta, scale);
  p.end.folded = fold_angle(p.end.mismatch);
  p.end.node_count = prufer_node_count(p.end.theta_end);
  p.end.steps = sol.accepted_steps;
  return p;
}

}  // namespace sltk

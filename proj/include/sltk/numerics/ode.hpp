#pragma once

/**
 * Embedded Dormand–Prince 5(4) integrator with forced landing points.
 *
 * Every requested output abscissa and every segment boundary is hit exactly
 * by a step end, so right-hand sides with jump discontinuities at known
 * points (piecewise potentials) keep the full order of the method. The
 * controller is deterministic: identical inputs give identical step
 * sequences.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sltk/errors.hpp"
#include "sltk/numerics/tolerance.hpp"

namespace sltk::num {

template <std::size_t N>
using State = std::array<double, N>;

/// Local error target as a fraction of the requested tolerance.
inline constexpr double kLocalSafety = 0.1;

template <std::size_t N>
struct OdeSolution {
  State<N> final{};
  /// One state per requested output point, in order.
  std::vector<State<N>> samples;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  /// Step size the controller would try next; useful to continue on the next segment.
  double next_step = 0.0;
};

namespace detail {

struct DormandPrince {
  static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                          a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                          b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
};

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
  State<N> out = y;
  for (const auto& [coef, k] : terms) {
    for (std::size_t i = 0; i < N; ++i) out[i] += h * coef * (*k)[i];
  }
  return out;
}

/// One DP5 step from (x, y) with slope k1 = f(x, y). Writes the 5th-order
/// solution, the embedded error vector and the FSAL slope at x + h.
template <std::size_t N, class Rhs>
void dp5_step(Rhs& rhs, double x, const State<N>& y, const State<N>& k1, double h, State<N>& y_new,
              State<N>& err, State<N>& k7) {
  using T = DormandPrince;
  const State<N> k2 = rhs(x + T::c2 * h, axpy<N>(y, h, {{T::a21, &k1}}));
  const State<N> k3 = rhs(x + T::c3 * h, axpy<N>(y, h, {{T::a31, &k1}, {T::a32, &k2}}));
  const State<N> k4 = rhs(x + T::c4 * h, axpy<N>(y, h, {{T::a41, &k1}, {T::a42, &k2}, {T::a43, &k3}}));
  const State<N> k5 =
      rhs(x + T::c5 * h, axpy<N>(y, h, {{T::a51, &k1}, {T::a52, &k2}, {T::a53, &k3}, {T::a54, &k4}}));
  const State<N> k6 = rhs(
      x + h, axpy<N>(y, h, {{T::a61, &k1}, {T::a62, &k2}, {T::a63, &k3}, {T::a64, &k4}, {T::a65, &k5}}));
  y_new = axpy<N>(y, h, {{T::b1, &k1}, {T::b3, &k3}, {T::b4, &k4}, {T::b5, &k5}, {T::b6, &k6}});
  k7 = rhs(x + h, y_new);
  for (std::size_t i = 0; i < N; ++i) {
    err[i] = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] + T::e6 * k6[i] +
                  T::e7 * k7[i]);
  }
}

}  // namespace detail

/// Adaptive integration of y' = rhs(x, y) from a to b. `outputs` must be
/// sorted and inside [a, b]; each one is landed on exactly and recorded.
/// `step_budget` is decremented per attempted step and shared by callers that
/// chain segments; exhaustion raises NumericalError.
template <std::size_t N, class Rhs>
OdeSolution<N> integrate_ode(Rhs&& rhs, double a, double b, State<N> y0, std::span<const double> outputs,
                             const ToleranceBundle& tol, double initial_step = 0.0,
                             std::size_t* step_budget = nullptr) {
  if (!(b >= a)) throw UsageError("integrate_ode: interval must satisfy a <= b");
  std::size_t local_budget = tol.max_steps;
  std::size_t& budget = step_budget ? *step_budget : local_budget;

  OdeSolution<N> sol;
  sol.samples.reserve(outputs.size());
  std::size_t next_out = 0;
  while (next_out < outputs.size() && outputs[next_out] <= a) {
    if (outputs[next_out] < a) throw UsageError("integrate_ode: output point before interval start");
    sol.samples.push_back(y0);
    ++next_out;
  }

  const double span = b - a;
  double h = initial_step > 0.0 ? initial_step : std::min(span, 1e-2);
  double x = a;
  State<N> y = y0;
  if (span == 0.0) {
    sol.final = y;
    sol.next_step = h;
    return sol;
  }
  State<N> k1 = rhs(x, y);
  State<N> y_new{}, err{}, k7{};
  bool last_rejected = false;

  while (x < b) {
    const double target = next_out < outputs.size() ? std::min(outputs[next_out], b) : b;
    double h_try = std::min(h, target - x);
    // Avoid leaving a sliver shorter than a tenth of a step before a landing point.
    const bool lands = h_try >= target - x || target - x - h_try < 0.1 * h_try;
    if (lands) h_try = target - x;

    if (budget == 0) {
      throw NumericalError("integrate_ode: step budget exhausted at x = " + std::to_string(x));
    }
    --budget;

    detail::dp5_step<N>(rhs, x, y, k1, h_try, y_new, err, k7);
    double err_norm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double scale =
          kLocalSafety * (tol.ode_abs + tol.ode_rel * std::max(std::abs(y[i]), std::abs(y_new[i])));
      err_norm = std::max(err_norm, std::abs(err[i]) / scale);
    }
    if (!std::isfinite(err_norm)) {
      throw NumericalError("integrate_ode: non-finite state at x = " + std::to_string(x));
    }

    if (err_norm <= 1.0) {
      x = lands ? target : x + h_try;
      y = y_new;
      k1 = k7;
      ++sol.accepted_steps;
      while (next_out < outputs.size() && outputs[next_out] <= x) {
        sol.samples.push_back(y);
        ++next_out;
      }
      double factor = err_norm == 0.0 ? 5.0 : 0.9 * std::pow(err_norm, -0.2);
      factor = std::clamp(factor, 0.2, last_rejected ? 1.0 : 5.0);
      // A forced short landing step says nothing about the natural step size.
      if (!(lands && h_try < h)) h = h_try * factor;
      last_rejected = false;
    } else {
      ++sol.rejected_steps;
      h = h_try * std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
      last_rejected = true;
      if (h < 1e-14 * std::max(1.0, std::abs(x))) {
        throw NumericalError("integrate_ode: step size underflow at x = " + std::to_string(x));
      }
    }
  }
  sol.final = y;
  sol.next_step = h;
  return sol;
}

/// Chains integrate_ode over consecutive smooth segments [breaks[j], breaks[j+1]].
/// `rhs(j, x, y)` is evaluated with the segment index so one-sided values at
/// the segment ends are used. Outputs are collected across all segments.
template <std::size_t N, class SegmentRhs>
OdeSolution<N> integrate_segments(SegmentRhs&& rhs, std::span<const double> breaks, State<N> y0,
                                  std::span<const double> outputs, const ToleranceBundle& tol) {
  if (breaks.size() < 2) throw UsageError("integrate_segments: need at least two breakpoints");
  OdeSolution<N> total;
  total.samples.reserve(outputs.size());
  std::size_t budget = tol.max_steps;
  std::size_t out_begin = 0;
  double h = 0.0;
  State<N> y = y0;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double a = breaks[j];
    const double b = breaks[j + 1];
    std::size_t out_end = out_begin;
    while (out_end < outputs.size() && outputs[out_end] <= b) ++out_end;
    // Outputs exactly at an interior break were already recorded by the previous segment.
    std::size_t first = out_begin;
    if (j > 0) {
      while (first < out_end && outputs[first] <= a) ++first;
    }
    auto seg_rhs = [&rhs, j](double x, const State<N>& s) { return rhs(j, x, s); };
    auto seg = integrate_ode<N>(seg_rhs, a, b, y, outputs.subspan(first, out_end - first), tol, h, &budget);
    total.samples.insert(total.samples.end(), seg.samples.begin(), seg.samples.end());
    total.accepted_steps += seg.accepted_steps;
    total.rejected_steps += seg.rejected_steps;
    h = seg.next_step;
    y = seg.final;
    out_begin = out_end;
  }
  total.final = y;
  total.next_step = h;
  return total;
}

/// Fixed-step DP5 (no error control); used to measure the order of the method.
template <std::size_t N, class Rhs>
State<N> integrate_fixed(Rhs&& rhs, double a, double b, State<N> y0, std::size_t steps) {
  if (steps == 0) throw UsageError("integrate_fixed: steps must be positive");
  const double h = (b - a) / static_cast<double>(steps);
  State<N> y = y0;
  State<N> y_new{}, err{}, k7{};
  State<N> k1 = rhs(a, y);
  for (std::size_t i = 0; i < steps; ++i) {
    const double x = a + static_cast<double>(i) * h;
    detail::dp5_step<N>(rhs, x, y, k1, h, y_new, err, k7);
    y = y_new;
    k1 = k7;
  }
  return y;
}

}  // namespace sltk::num

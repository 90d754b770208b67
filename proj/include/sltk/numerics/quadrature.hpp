#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sltk/errors.hpp"

namespace sltk::num {

/// Default node count for composite Simpson on [0,1].
inline constexpr std::size_t kDefaultQuadratureNodes = 2049;

struct QuadratureResult {
  double value = 0.0;
  /// Richardson estimate |S_h - S_2h| / 15 plus a rounding floor.
  double error_estimate = 0.0;
};

namespace detail {

inline double simpson_sum(std::span<const double> f, std::size_t stride, double h) {
  const std::size_t n = f.size();
  double ends = f[0] + f[n - 1];
  double odd = 0.0, even = 0.0;
  std::size_t k = 1;
  for (std::size_t i = stride; i + stride < n; i += stride, ++k) {
    if (k % 2 == 1) {
      odd += f[i];
    } else {
      even += f[i];
    }
  }
  return h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
}

}  // namespace detail

/// Composite Simpson over uniform samples of f on [a, b].
///
/// The error estimate compares against Simpson on every other node when the
/// node count allows it ((n-1) divisible by 4), otherwise against the
/// trapezoid rule on the same nodes, which overestimates.
inline QuadratureResult simpson(std::span<const double> samples, double a = 0.0, double b = 1.0) {
  const std::size_t n = samples.size();
  if (n < 3 || n % 2 == 0) {
    throw UsageError("simpson: node count must be odd and >= 3, got " + std::to_string(n));
  }
  const double h = (b - a) / static_cast<double>(n - 1);
  QuadratureResult r;
  r.value = detail::simpson_sum(samples, 1, h);

  double magnitude = 0.0;
  for (double v : samples) magnitude += std::abs(v);
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * magnitude * std::abs(h);

  double coarse = 0.0;
  if ((n - 1) % 4 == 0) {
    coarse = detail::simpson_sum(samples, 2, 2.0 * h);
    r.error_estimate = std::abs(r.value - coarse) / 15.0 + rounding;
  } else {
    double trap = 0.5 * (samples[0] + samples[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) trap += samples[i];
    trap *= h;
    r.error_estimate = std::abs(r.value - trap) + rounding;
  }
  return r;
}

/// Samples f on n_nodes uniform nodes of [a, b] and applies simpson().
template <class F>
QuadratureResult simpson_fn(F&& f, double a, double b, std::size_t n_nodes = kDefaultQuadratureNodes) {
  if (n_nodes < 3 || n_nodes % 2 == 0) {
    throw UsageError("simpson: node count must be odd and >= 3, got " + std::to_string(n_nodes));
  }
  std::vector<double> values(n_nodes);
  const double h = (b - a) / static_cast<double>(n_nodes - 1);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const double x = i + 1 == n_nodes ? b : a + static_cast<double>(i) * h;
    values[i] = f(x);
  }
  return simpson(values, a, b);
}

/// Uniform grid on [0,1] with n points; the last point is exactly 1.
inline std::vector<double> uniform_grid(std::size_t n) {
  if (n < 2) throw UsageError("uniform_grid: need at least two points");
  std::vector<double> x(n);
  const double h = 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i) * h;
  x.back() = 1.0;
  return x;
}

}  // namespace sltk::num

#pragma once

// Arithmetic on potentials and the integral functionals the uniqueness
// checks need: mean, essential bounds, Fourier coefficients, L1/Linf norms
// and the even/odd split about x = 1/2.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <numeric>
#include <vector>

#include "sltk/numerics/quadrature.hpp"
#include "sltk/potential/potential.hpp"

namespace sltk {

namespace detail {

inline std::vector<double> merge_breakpoints(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double v : a) {
    if (out.empty() || v - out.back() > 1e-14) out.push_back(v);
  }
  out.front() = 0.0;
  if (out.back() < 1.0 - 1e-14) {
    out.push_back(1.0);
  } else {
    out.back() = 1.0;
  }
  return out;
}

inline std::size_t refined_size(std::size_t n) {
  const std::size_t cells = n - 1;
  const std::size_t factor = std::max<std::size_t>(1, (2048 + cells - 1) / cells);
  return cells * factor + 1;
}

inline std::size_t merged_sample_count(const Potential& a, const Potential& b) {
  const auto* sa = a.as_sampled();
  const auto* sb = b.as_sampled();
  if (sa && sb) {
    const std::size_t ca = sa->values.size() - 1, cb = sb->values.size() - 1;
    const std::size_t l = std::lcm(ca, cb);
    if (l <= 65536) return l + 1;
    return std::max(sa->values.size(), sb->values.size());
  }
  if (sa) return refined_size(sa->values.size());
  if (sb) return refined_size(sb->values.size());
  return num::kDefaultQuadratureNodes;
}

inline Analytic analytic_axpy(const Analytic& a, double s, const Analytic& b) {
  Analytic out;
  out.constant = a.constant + s * b.constant;
  auto combine = [s](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> r(std::max(x.size(), y.size()), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) r[i] += x[i];
    for (std::size_t i = 0; i < y.size(); ++i) r[i] += s * y[i];
    return r;
  };
  out.cos_coeffs = combine(a.cos_coeffs, b.cos_coeffs);
  out.sin_coeffs = combine(a.sin_coeffs, b.sin_coeffs);
  return out;
}

/// s * q + c, keeping q's representation.
inline Potential affine(const Potential& q, double s, double c) {
  if (const auto* p = q.as_piecewise()) {
    PiecewiseConstant r = *p;
    for (double& v : r.values) v = s * v + c;
    return Potential::unchecked(std::move(r));
  }
  if (const auto* sm = q.as_sampled()) {
    Sampled r = *sm;
    for (double& v : r.values) v = s * v + c;
    return Potential::unchecked(std::move(r));
  }
  Analytic r = *q.as_analytic();
  r.constant = s * r.constant + c;
  for (double& v : r.cos_coeffs) v *= s;
  for (double& v : r.sin_coeffs) v *= s;
  return Potential::unchecked(std::move(r));
}

/// a + s * b with the representation rules of subtract().
inline Potential axpy(const Potential& a, double s, const Potential& b) {
  const auto* aa = a.as_analytic();
  const auto* ab = b.as_analytic();
  if (aa && ab) return Potential::unchecked(analytic_axpy(*aa, s, *ab));
  if (ab && b.is_constant()) return affine(a, 1.0, s * ab->constant);
  if (aa && a.is_constant()) return affine(b, s, aa->constant);

  const auto* pa = a.as_piecewise();
  const auto* pb = b.as_piecewise();
  if (pa && pb) {
    PiecewiseConstant r;
    r.breakpoints = merge_breakpoints(pa->breakpoints, pb->breakpoints);
    r.values.resize(r.breakpoints.size() - 1);
    for (std::size_t j = 0; j < r.values.size(); ++j) {
      const double mid = 0.5 * (r.breakpoints[j] + r.breakpoints[j + 1]);
      r.values[j] = pa->values[Potential::cell_index(*pa, mid)] + s * pb->values[Potential::cell_index(*pb, mid)];
    }
    return Potential::unchecked(std::move(r));
  }

  const std::size_t n = merged_sample_count(a, b);
  Sampled r;
  r.values.resize(n);
  const auto grid = num::uniform_grid(n);
  for (std::size_t i = 0; i < n; ++i) r.values[i] = a(grid[i]) + s * b(grid[i]);
  return Potential::unchecked(std::move(r));
}

}  // namespace detail

/// q - qt. Analytic pairs stay analytic; constants fold into the other
/// operand's representation; two piecewise-constant inputs give a
/// piecewise-constant result on the merged breakpoints; anything else is
/// sampled on a merged/refined uniform grid.
inline Potential subtract(const Potential& q, const Potential& qt) { return detail::axpy(q, -1.0, qt); }

inline Potential add(const Potential& q, const Potential& p) { return detail::axpy(q, 1.0, p); }

/// q + s * p
inline Potential add_scaled(const Potential& q, double s, const Potential& p) { return detail::axpy(q, s, p); }

inline Potential scale(const Potential& q, double s) { return detail::affine(q, s, 0.0); }

inline Potential shift(const Potential& q, double c) { return detail::affine(q, 1.0, c); }

/// Floor on the Simpson intervals per cell of a piecewise-constant potential.
inline constexpr std::size_t kPiecewiseSegmentIntervals = 4096;

/// Composite Simpson of q(x) g(x) on each smooth segment of q. Each segment
/// gets a multiple of four intervals, proportional to its length, so that
/// a single-segment potential uses `n_nodes` nodes and the Richardson
/// comparison runs at half resolution.
template <class G>
num::QuadratureResult integrate_weighted(const Potential& q, G&& g,
                                         std::size_t n_nodes = num::kDefaultQuadratureNodes) {
  const auto breaks = q.segment_breaks();
  const double total_intervals = static_cast<double>(n_nodes - 1);
  num::QuadratureResult total;
  std::vector<double> values;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double a = breaks[j];
    const double b = breaks[j + 1];
    const auto quarter = static_cast<std::size_t>(std::ceil((b - a) * total_intervals / 4.0 - 1e-9));
    std::size_t intervals = 4 * std::max<std::size_t>(1, quarter);
    if (q.as_piecewise()) intervals = std::max(intervals, kPiecewiseSegmentIntervals);
    values.resize(intervals + 1);
    const double h = (b - a) / static_cast<double>(intervals);
    for (std::size_t i = 0; i <= intervals; ++i) {
      const double x = i == intervals ? b : a + static_cast<double>(i) * h;
      values[i] = q.eval_on_segment(j, x) * g(x);
    }
    const auto r = num::simpson(values, a, b);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
  }
  return total;
}

/// Mean of q over [0,1] with its quadrature error estimate (zero for piecewise input).
inline num::QuadratureResult integral_with_error(const Potential& q) {
  if (const auto* p = q.as_piecewise()) {
    num::QuadratureResult r;
    for (std::size_t j = 0; j < p->values.size(); ++j) {
      r.value += p->values[j] * (p->breakpoints[j + 1] - p->breakpoints[j]);
    }
    return r;
  }
  return integrate_weighted(q, [](double) { return 1.0; });
}

inline double integral(const Potential& q) { return integral_with_error(q).value; }

namespace detail {

/// Extremum of a trigonometric series over one period: dense sampling at 256
/// points per shortest period, then golden-section refinement of the best
/// local candidates.
inline double series_extremum(const Analytic& a, std::size_t max_freq, bool want_max) {
  const double sign = want_max ? -1.0 : 1.0;  // minimise sign * f
  auto f = [&](double x) { return sign * Potential::eval_series(a, x); };
  const std::size_t m = 256 * std::max<std::size_t>(1, max_freq);
  std::vector<double> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = f(static_cast<double>(i) / static_cast<double>(m));
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < m; ++i) {
    const double left = v[(i + m - 1) % m];
    const double right = v[(i + 1) % m];
    if (v[i] <= left && v[i] <= right) candidates.push_back(i);
  }
  std::sort(candidates.begin(), candidates.end(), [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
  if (candidates.size() > 8) candidates.resize(8);
  const double h = 1.0 / static_cast<double>(m);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double best = *std::min_element(v.begin(), v.end());
  for (std::size_t idx : candidates) {
    double lo = static_cast<double>(idx) * h - h;
    double hi = static_cast<double>(idx) * h + h;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        hi = x2, x2 = x1, f2 = f1;
        x1 = hi - inv_phi * (hi - lo), f1 = f(x1);
      } else {
        lo = x1, x1 = x2, f1 = f2;
        x2 = lo + inv_phi * (hi - lo), f2 = f(x2);
      }
    }
    best = std::min({best, f1, f2});
  }
  return sign * best;
}

inline double essential_bound(const Potential& q, bool want_max) {
  auto pick = [want_max](const std::vector<double>& v) {
    return want_max ? *std::max_element(v.begin(), v.end()) : *std::min_element(v.begin(), v.end());
  };
  if (const auto* p = q.as_piecewise()) return pick(p->values);
  if (const auto* s = q.as_sampled()) return pick(s->values);
  const auto& a = *q.as_analytic();
  // Closed form when a single frequency is present: c0 +- sqrt(a_k^2 + b_k^2).
  std::size_t freq = 0, count = 0;
  const std::size_t kmax = std::max(a.cos_coeffs.size(), a.sin_coeffs.size());
  for (std::size_t k = 0; k < kmax; ++k) {
    const double c = k < a.cos_coeffs.size() ? a.cos_coeffs[k] : 0.0;
    const double s = k < a.sin_coeffs.size() ? a.sin_coeffs[k] : 0.0;
    if (c != 0.0 || s != 0.0) ++count, freq = k;
  }
  if (count == 0) return a.constant;
  if (count == 1) {
    const double c = freq < a.cos_coeffs.size() ? a.cos_coeffs[freq] : 0.0;
    const double s = freq < a.sin_coeffs.size() ? a.sin_coeffs[freq] : 0.0;
    const double amp = std::hypot(c, s);
    return want_max ? a.constant + amp : a.constant - amp;
  }
  return series_extremum(a, q.max_frequency(), want_max);
}

}  // namespace detail

/// Essential infimum. Breakpoint values of piecewise input carry no measure.
inline double ess_inf(const Potential& q) { return detail::essential_bound(q, false); }
inline double ess_sup(const Potential& q) { return detail::essential_bound(q, true); }

/// a_n = \int_0^1 q(x) cos(2 n pi x) dx
namespace detail {

/// \int q(x) f(w x) dx for piecewise-constant q, f = cos or sin, from the
/// cell antiderivatives written as products to avoid cancellation.
inline double piecewise_trig_moment(const PiecewiseConstant& p, double w, bool cosine) {
  double sum = 0.0;
  for (std::size_t j = 0; j < p.values.size(); ++j) {
    const double a = p.breakpoints[j], b = p.breakpoints[j + 1];
    const double half = std::sin(0.5 * w * (b - a));
    const double mid = 0.5 * w * (a + b);
    sum += p.values[j] * 2.0 * half * (cosine ? std::cos(mid) : std::sin(mid)) / w;
  }
  return sum;
}

}  // namespace detail

/// a_n = \int_0^1 q(x) cos(2 n pi x) dx
inline double fourier_cos_coeff(const Potential& q, int n) {
  if (n < 1) throw UsageError("fourier_cos_coeff: n must be >= 1");
  const double w = 2.0 * std::numbers::pi * n;
  if (const auto* p = q.as_piecewise()) return detail::piecewise_trig_moment(*p, w, true);
  return integrate_weighted(q, [w](double x) { return std::cos(w * x); }).value;
}

/// b_n = \int_0^1 q(x) sin(2 n pi x) dx
inline double fourier_sin_coeff(const Potential& q, int n) {
  if (n < 1) throw UsageError("fourier_sin_coeff: n must be >= 1");
  const double w = 2.0 * std::numbers::pi * n;
  if (const auto* p = q.as_piecewise()) return detail::piecewise_trig_moment(*p, w, false);
  return integrate_weighted(q, [w](double x) { return std::sin(w * x); }).value;
}

struct EvenOddParts {
  Potential even;  ///< (q(x) + q(1-x)) / 2
  Potential odd;   ///< (q(x) - q(1-x)) / 2
};

/// Split about the midpoint x = 1/2.
inline EvenOddParts even_odd_split(const Potential& q) {
  if (const auto* a = q.as_analytic()) {
    // cos(2 pi k (1-x)) = cos(2 pi k x), sin(2 pi k (1-x)) = -sin(2 pi k x)
    Analytic even{a->constant, a->cos_coeffs, {}};
    Analytic odd{0.0, {}, a->sin_coeffs};
    return {Potential::unchecked(std::move(even)), Potential::unchecked(std::move(odd))};
  }
  if (const auto* s = q.as_sampled()) {
    const std::size_t n = s->values.size();
    Sampled even, odd;
    even.values.resize(n);
    odd.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = s->values[i];
      const double y = s->values[n - 1 - i];
      even.values[i] = 0.5 * (x + y);
      odd.values[i] = 0.5 * (x - y);
    }
    return {Potential::unchecked(std::move(even)), Potential::unchecked(std::move(odd))};
  }
  const auto& p = *q.as_piecewise();
  // Symmetric breakpoint set: the left half of bps U (1 - bps), mirrored.
  std::vector<double> mirrored;
  for (double b : p.breakpoints) mirrored.push_back(1.0 - b);
  const auto merged = detail::merge_breakpoints(p.breakpoints, mirrored);
  std::vector<double> left;
  for (double b : merged) {
    if (b < 0.5 - 1e-14) left.push_back(b);
  }
  std::vector<double> bps = left;
  bps.push_back(0.5);
  for (auto it = left.rbegin(); it != left.rend(); ++it) bps.push_back(1.0 - *it);
  // 0.5 is only a genuine breakpoint if some original breakpoint sits there;
  // keeping it otherwise is harmless (equal values on both sides).
  PiecewiseConstant even{bps, {}}, odd{bps, {}};
  const std::size_t cells = bps.size() - 1;
  even.values.resize(cells);
  odd.values.resize(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    const std::size_t mirror = cells - 1 - j;
    const double mid = 0.5 * (bps[j] + bps[j + 1]);
    const double mid_mirror = 0.5 * (bps[mirror] + bps[mirror + 1]);
    const double here = p.values[Potential::cell_index(p, mid)];
    const double there = p.values[Potential::cell_index(p, mid_mirror)];
    even.values[j] = 0.5 * (here + there);
    odd.values[j] = 0.5 * (here - there);
  }
  return {Potential::unchecked(std::move(even)), Potential::unchecked(std::move(odd))};
}

/// \int_0^1 |q(x)| dx. Exact for piecewise-constant and sampled input; for
/// analytic input the interval is split at the sign changes of q first.
inline double l1_norm(const Potential& q) {
  if (const auto* p = q.as_piecewise()) {
    double s = 0.0;
    for (std::size_t j = 0; j < p->values.size(); ++j) {
      s += std::abs(p->values[j]) * (p->breakpoints[j + 1] - p->breakpoints[j]);
    }
    return s;
  }
  if (const auto* sm = q.as_sampled()) {
    const std::size_t n = sm->values.size();
    const double h = 1.0 / static_cast<double>(n - 1);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double a = sm->values[i], b = sm->values[i + 1];
      if ((a >= 0.0 && b >= 0.0) || (a <= 0.0 && b <= 0.0)) {
        s += 0.5 * (std::abs(a) + std::abs(b)) * h;
      } else {
        s += 0.5 * (a * a + b * b) / (std::abs(a) + std::abs(b)) * h;
      }
    }
    return s;
  }
  const auto& a = *q.as_analytic();
  if (q.is_constant()) return std::abs(a.constant);
  auto f = [&](double x) { return Potential::eval_series(a, x); };
  const std::size_t m = 2048 * std::max<std::size_t>(1, q.max_frequency());
  std::vector<double> cuts{0.0};
  double prev = f(0.0);
  for (std::size_t i = 1; i <= m; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(m);
    const double cur = f(x);
    if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) {
      double lo = static_cast<double>(i - 1) / static_cast<double>(m), hi = x;
      const bool rising = prev < 0.0;
      for (int it = 0; it < 100 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) < 0.0) == rising) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      cuts.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  cuts.push_back(1.0);
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double len = cuts[j + 1] - cuts[j];
    if (len <= 0.0) continue;
    const auto quarter = static_cast<std::size_t>(std::ceil(len * 2048.0 / 4.0));
    const std::size_t nodes = 4 * std::max<std::size_t>(2, quarter) + 1;
    s += num::simpson_fn([&](double x) { return std::abs(f(x)); }, cuts[j], cuts[j + 1], nodes).value;
  }
  return s;
}

/// Essential supremum of |q|.
inline double linf_norm(const Potential& q) { return std::max(std::abs(ess_inf(q)), std::abs(ess_sup(q))); }

}  // namespace sltk

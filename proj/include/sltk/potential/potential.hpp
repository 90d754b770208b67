#pragma once

/**
 * Real potentials on [0,1] in three representations.
 *
 *  - PiecewiseConstant: cells [b_j, b_{j+1}) with the last cell closed.
 *    Breakpoint values are a measure-zero convention.
 *  - Sampled: values on a uniform grid including both endpoints, linear
 *    interpolation in between.
 *  - Analytic: a finite trigonometric series
 *        c0 + sum_k a_k cos(2 pi k x) + b_k sin(2 pi k x),
 *    which covers the catalog entries zero, constant(c), cos2pi(k),
 *    sin2pi(k) and arbitrary coefficient tables.
 *
 * Values are immutable after construction.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sltk/decimal.hpp"
#include "sltk/errors.hpp"

namespace sltk {

struct PiecewiseConstant {
  std::vector<double> breakpoints;  ///< strictly increasing, 0 first, 1 last
  std::vector<double> values;       ///< one per cell
};

struct Sampled {
  std::vector<double> values;  ///< uniform grid on [0,1], >= 3 points
};

struct Analytic {
  double constant = 0.0;
  std::vector<double> cos_coeffs;  ///< entry k-1 multiplies cos(2 pi k x)
  std::vector<double> sin_coeffs;  ///< entry k-1 multiplies sin(2 pi k x)
};

enum class RepresentationKind { piecewise, sampled, analytic };

/// Catalog classification of an Analytic series.
enum class AnalyticTag { zero, constant, cos2pi, sin2pi, custom_table };

class Potential {
 public:
  using Representation = std::variant<PiecewiseConstant, Sampled, Analytic>;

  Potential() : rep_(Analytic{}) {}

  static Potential zero() { return Potential(Analytic{}); }
  static Potential constant(double c) { return from_analytic(Analytic{c, {}, {}}); }

  static Potential cos2pi(int k = 1, double amplitude = 1.0) {
    check_frequency(k);
    Analytic a;
    a.cos_coeffs.assign(static_cast<std::size_t>(k), 0.0);
    a.cos_coeffs.back() = amplitude;
    return from_analytic(std::move(a));
  }

  static Potential sin2pi(int k = 1, double amplitude = 1.0) {
    check_frequency(k);
    Analytic a;
    a.sin_coeffs.assign(static_cast<std::size_t>(k), 0.0);
    a.sin_coeffs.back() = amplitude;
    return from_analytic(std::move(a));
  }

  static Potential custom_table(double constant, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
    return from_analytic(Analytic{constant, std::move(cos_coeffs), std::move(sin_coeffs)});
  }

  static Potential from_analytic(Analytic a) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::isfinite(a.constant) || !std::all_of(a.cos_coeffs.begin(), a.cos_coeffs.end(), finite) ||
        !std::all_of(a.sin_coeffs.begin(), a.sin_coeffs.end(), finite)) {
      throw UsageError("analytic potential: coefficients must be finite");
    }
    return Potential(std::move(a));
  }

  static Potential piecewise(std::vector<double> breakpoints, std::vector<double> values) {
    const std::size_t nb = breakpoints.size();
    if (nb < 2) throw UsageError("piecewise potential: need at least two breakpoints");
    if (values.size() != nb - 1) {
      throw UsageError("piecewise potential: expected " + std::to_string(nb - 1) + " values, got " +
                       std::to_string(values.size()));
    }
    if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
      throw UsageError("piecewise potential: breakpoints must start at 0 and end at 1");
    }
    for (std::size_t i = 0; i + 1 < nb; ++i) {
      if (!(breakpoints[i] < breakpoints[i + 1])) {
        throw UsageError("piecewise potential: breakpoints must be strictly increasing");
      }
    }
    for (double v : values) {
      if (!std::isfinite(v)) throw UsageError("piecewise potential: values must be finite");
    }
    return Potential(PiecewiseConstant{std::move(breakpoints), std::move(values)});
  }

  static Potential sampled(std::vector<double> values) {
    if (values.size() < 3) throw UsageError("sampled potential: need at least 3 grid points");
    for (double v : values) {
      if (!std::isfinite(v)) throw UsageError("sampled potential: values must be finite");
    }
    return Potential(Sampled{std::move(values)});
  }

  /// Builds from a representation without validation; used for derived
  /// potentials whose values may overflow (see bounded()).
  static Potential unchecked(Representation rep) { return Potential(std::move(rep)); }

  const Representation& representation() const noexcept { return rep_; }

  RepresentationKind kind() const noexcept {
    if (std::holds_alternative<PiecewiseConstant>(rep_)) return RepresentationKind::piecewise;
    if (std::holds_alternative<Sampled>(rep_)) return RepresentationKind::sampled;
    return RepresentationKind::analytic;
  }

  const PiecewiseConstant* as_piecewise() const noexcept { return std::get_if<PiecewiseConstant>(&rep_); }
  const Sampled* as_sampled() const noexcept { return std::get_if<Sampled>(&rep_); }
  const Analytic* as_analytic() const noexcept { return std::get_if<Analytic>(&rep_); }

  /// True when the potential is a constant function (any representation).
  bool is_constant() const {
    if (const auto* a = as_analytic()) {
      auto z = [](double v) { return v == 0.0; };
      return std::all_of(a->cos_coeffs.begin(), a->cos_coeffs.end(), z) &&
             std::all_of(a->sin_coeffs.begin(), a->sin_coeffs.end(), z);
    }
    const auto& vals = as_piecewise() ? as_piecewise()->values : as_sampled()->values;
    return std::all_of(vals.begin(), vals.end(), [&](double v) { return v == vals.front(); });
  }

  /// False if any stored value is infinite or NaN.
  bool bounded() const {
    auto finite = [](const std::vector<double>& v) {
      return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    if (const auto* p = as_piecewise()) return finite(p->values);
    if (const auto* s = as_sampled()) return finite(s->values);
    const auto* a = as_analytic();
    return std::isfinite(a->constant) && finite(a->cos_coeffs) && finite(a->sin_coeffs);
  }

  AnalyticTag analytic_tag() const {
    const auto* a = as_analytic();
    if (!a) throw UsageError("analytic_tag: potential is not analytic");
    std::size_t nonzero = 0;
    bool cos_term = false;
    double amp = 0.0;
    for (double v : a->cos_coeffs) {
      if (v != 0.0) ++nonzero, cos_term = true, amp = v;
    }
    for (double v : a->sin_coeffs) {
      if (v != 0.0) ++nonzero, amp = v;
    }
    if (nonzero == 0) return a->constant == 0.0 ? AnalyticTag::zero : AnalyticTag::constant;
    if (nonzero == 1 && a->constant == 0.0 && amp == 1.0) {
      return cos_term ? AnalyticTag::cos2pi : AnalyticTag::sin2pi;
    }
    return AnalyticTag::custom_table;
  }

  /// Evaluation with the left-closed cell convention. Throws DomainError outside [0,1].
  double operator()(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw DomainError("potential evaluated outside [0,1] at x = " + format_double(x));
    }
    return evaluate(x);
  }

  /// Smoothness breakpoints including 0 and 1. The potential restricted to
  /// any [breaks[j], breaks[j+1]] is smooth; eval_on_segment gives it.
  std::vector<double> segment_breaks() const {
    if (const auto* p = as_piecewise()) return p->breakpoints;
    if (const auto* s = as_sampled()) {
      const std::size_t n = s->values.size();
      std::vector<double> b(n);
      for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<double>(i) / static_cast<double>(n - 1);
      b.back() = 1.0;
      return b;
    }
    return {0.0, 1.0};
  }

  std::size_t segment_count() const {
    if (const auto* p = as_piecewise()) return p->values.size();
    if (const auto* s = as_sampled()) return s->values.size() - 1;
    return 1;
  }

  /// Value of the smooth piece on segment j, extended continuously to its endpoints.
  double eval_on_segment(std::size_t j, double x) const {
    if (const auto* p = as_piecewise()) return p->values[j];
    if (const auto* s = as_sampled()) {
      const double scale = static_cast<double>(s->values.size() - 1);
      const double t = x * scale - static_cast<double>(j);
      return s->values[j] + t * (s->values[j + 1] - s->values[j]);
    }
    return eval_series(*as_analytic(), x);
  }

  /// Largest frequency present in an analytic series (0 otherwise).
  std::size_t max_frequency() const {
    const auto* a = as_analytic();
    if (!a) return 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < a->cos_coeffs.size(); ++i) {
      if (a->cos_coeffs[i] != 0.0) k = std::max(k, i + 1);
    }
    for (std::size_t i = 0; i < a->sin_coeffs.size(); ++i) {
      if (a->sin_coeffs[i] != 0.0) k = std::max(k, i + 1);
    }
    return k;
  }

  std::string describe() const {
    if (const auto* p = as_piecewise()) {
      return "piecewise(breakpoints=[" + join_doubles(p->breakpoints) + "], values=[" + join_doubles(p->values) + "])";
    }
    if (const auto* s = as_sampled()) return "sampled(" + std::to_string(s->values.size()) + " points)";
    const auto* a = as_analytic();
    switch (analytic_tag()) {
      case AnalyticTag::zero:
        return "zero";
      case AnalyticTag::constant:
        return "constant(" + format_double(a->constant) + ")";
      case AnalyticTag::cos2pi:
        return "cos2pi(k=" + std::to_string(max_frequency()) + ")";
      case AnalyticTag::sin2pi:
        return "sin2pi(k=" + std::to_string(max_frequency()) + ")";
      case AnalyticTag::custom_table:
        break;
    }
    return "custom-table(constant=" + format_double(a->constant) + ", cos=[" + join_doubles(a->cos_coeffs) +
           "], sin=[" + join_doubles(a->sin_coeffs) + "])";
  }

  static double eval_series(const Analytic& a, double x) {
    double s = a.constant;
    const double w = 2.0 * std::numbers::pi * x;
    for (std::size_t i = 0; i < a.cos_coeffs.size(); ++i) {
      if (a.cos_coeffs[i] != 0.0) s += a.cos_coeffs[i] * std::cos(static_cast<double>(i + 1) * w);
    }
    for (std::size_t i = 0; i < a.sin_coeffs.size(); ++i) {
      if (a.sin_coeffs[i] != 0.0) s += a.sin_coeffs[i] * std::sin(static_cast<double>(i + 1) * w);
    }
    return s;
  }

  /// Index of the cell containing x (left-closed, last cell closed).
  static std::size_t cell_index(const PiecewiseConstant& p, double x) {
    const auto it = std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), x);
    const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - p.breakpoints.begin() - 1));
    return std::min(idx, p.values.size() - 1);
  }

 private:
  explicit Potential(Representation rep) : rep_(std::move(rep)) {}

  static void check_frequency(int k) {
    if (k < 1) throw UsageError("frequency k must be >= 1");
  }

  double evaluate(double x) const {
    if (const auto* p = as_piecewise()) return p->values[cell_index(*p, x)];
    if (const auto* s = as_sampled()) {
      const std::size_t cells = s->values.size() - 1;
      const auto j = std::min(static_cast<std::size_t>(x * static_cast<double>(cells)), cells - 1);
      return eval_on_segment(j, x);
    }
    return eval_series(*as_analytic(), x);
  }

  Representation rep_;
};

/// eval(q, x); throws DomainError for x outside [0,1].
inline double eval(const Potential& q, double x) { return q(x); }

}  // namespace sltk

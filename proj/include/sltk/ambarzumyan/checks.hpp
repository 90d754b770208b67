#pragma once

// Evaluators for the uniqueness statements: each computes the hypothesis
// residuals for a pair (q, qt), the conclusion residual and the verdicts.
// Indices n are 1-based here; the solver index is n - 1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sltk/ambarzumyan/report.hpp"
#include "sltk/potential/functionals.hpp"
#include "sltk/potential/potential.hpp"
#include "sltk/solver/boundary.hpp"
#include "sltk/solver/solver.hpp"

namespace sltk {

struct CheckOptions {
  ReportTolerances tolerances;
  SolverOptions solver;
  /// eigenvalues within this relative distance of the reference one span its eigenspace
  double degeneracy_tol = 1e-7;
};

/// Reference eigenpair (or eigenspace) for the index under test.
struct Reference {
  double lambda = 0.0;
  std::vector<std::vector<double>> basis;  ///< one normalised eigenfunction per copy of lambda
};

struct InnerCondition {
  double delta = 0.0;
  double inner_product_value = 0.0;
  double residual = 0.0;
  /// |((qhat - delta) y, y)| for the same eigenfunction y
  double proof_identity_residual = 0.0;
  bool degenerate = false;
  std::size_t eigenspace_dim = 1;
  Verdict verdict = Verdict::fail;
};

struct ExtremalCondition {
  std::optional<double> ess_inf;
  std::optional<double> ess_sup;
  std::optional<double> residual;
  std::string branch = "none";
  Verdict verdict = Verdict::unsupported;
};

struct FourierIdentity {
  int n = 1;
  double lhs = 0.0;  ///< 2 \int q sin^2(n pi x)
  double rhs = 0.0;  ///< \int q - \int q cos(2 n pi x)
  double residual = 0.0;
};

namespace detail {

inline void require_index(int n) {
  if (n < 1) throw UsageError("index n must be >= 1, got " + std::to_string(n));
}

inline SolverOptions solver_options(const CheckOptions& opts) {
  SolverOptions s = opts.solver;
  s.tol.root_tol = opts.tolerances.solver;
  return s;
}

inline std::vector<double> dirichlet_sine(int n, std::size_t grid_size) {
  const auto grid = num::uniform_grid(grid_size);
  std::vector<double> y(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) y[i] = std::numbers::sqrt2 * std::sin(n * std::numbers::pi * grid[i]);
  return y;
}

inline Reference numeric_reference(const Potential& qt, const BoundaryCondition& bc, int n, const CheckOptions& opts) {
  const auto s = solver_options(opts);
  const auto k = static_cast<std::size_t>(n - 1);
  const auto data = spectrum(qt, bc, k + 1, s);
  Reference ref;
  ref.lambda = data.pairs[k].eigenvalue;
  const double tol = opts.degeneracy_tol * std::max(1.0, std::abs(ref.lambda));
  for (const auto& p : data.pairs) {
    if (std::abs(p.eigenvalue - ref.lambda) <= tol) ref.basis.push_back(p.eigenfunction);
  }
  return ref;
}

inline InnerCondition inner_condition(const Potential& qhat, double lambda, const Reference& ref, double tol) {
  InnerCondition r;
  r.delta = lambda - ref.lambda;
  r.eigenspace_dim = ref.basis.size();
  r.degenerate = r.eigenspace_dim > 1;
  const auto gap = shift(qhat, -r.delta);
  for (std::size_t i = 0; i < ref.basis.size(); ++i) {
    const double inner = weighted_inner_product(qhat, ref.basis[i]);
    const double residual = std::abs(r.delta - inner);
    if (i == 0 || residual < r.residual) {
      r.inner_product_value = inner;
      r.residual = residual;
      r.proof_identity_residual = std::abs(weighted_inner_product(gap, ref.basis[i]));
    }
  }
  r.verdict = gate(r.residual, tol);
  return r;
}

inline ExtremalCondition extremal_condition(const Potential& qhat, double delta, double tol) {
  ExtremalCondition r;
  if (!qhat.bounded()) return r;
  const double lo = ess_inf(qhat), hi = ess_sup(qhat);
  if (!std::isfinite(lo) || !std::isfinite(hi)) return r;
  r.ess_inf = lo;
  r.ess_sup = hi;
  const double d_lo = std::abs(delta - lo), d_hi = std::abs(delta - hi);
  r.residual = std::min(d_lo, d_hi);
  r.branch = d_lo <= d_hi ? "inf" : "sup";
  r.verdict = gate(*r.residual, tol);
  return r;
}

inline std::string backend_label(const BoundaryCondition& bc, const CheckOptions& opts) {
  return backend_name(resolve_backend(bc, opts.solver.backend));
}

/// Fills every field shared by the checks built on the general statement.
inline ConditionReport assemble(CheckKind kind, const Potential& q, const Potential& qt, const BoundaryCondition& bc,
                                int n, double lambda, const Reference& ref, const CheckOptions& opts) {
  const double tol = opts.tolerances.condition;
  const auto qhat = subtract(q, qt);
  const auto inner = inner_condition(qhat, lambda, ref, tol);
  const auto ext = extremal_condition(qhat, inner.delta, tol);

  ConditionReport r;
  r.check = kind;
  r.q = q.describe();
  r.qt = qt.describe();
  r.bc = bc.name();
  r.n = n;
  r.index = static_cast<std::size_t>(n - 1);
  r.backend = backend_label(bc, opts);
  r.lambda_n = lambda;
  r.lambda_ref = ref.lambda;
  r.delta = inner.delta;
  r.inner_product_value = inner.inner_product_value;
  r.ess_inf_qhat = ext.ess_inf;
  r.ess_sup_qhat = ext.ess_sup;
  r.residual_inner = inner.residual;
  r.residual_extremal = ext.residual;
  r.extremal_branch = ext.branch;
  r.proof_identity_residual = inner.proof_identity_residual;
  const auto gap = shift(qhat, -inner.delta);
  r.conclusion_l1_residual = l1_norm(gap);
  if (gap.as_piecewise()) r.conclusion_linf_residual = linf_norm(gap);
  r.degenerate = inner.degenerate;
  r.eigenspace_dim = inner.eigenspace_dim;
  r.tolerances = opts.tolerances;
  r.verdict_inner = inner.verdict;
  r.verdict_extremal = ext.verdict;
  r.verdict_conclusion = gate(r.conclusion_l1_residual, tol);
  r.hypotheses_hold = r.verdict_inner == Verdict::pass && r.verdict_extremal == Verdict::pass;
  r.consistent = !r.hypotheses_hold || r.verdict_conclusion == Verdict::pass;
  return r;
}

/// Adds the equal-mean gate and the strengthened conclusion ||q - qt||_1.
inline void add_mean_gate(ConditionReport& r, const Potential& q, const Potential& qt) {
  const double tol = r.tolerances.condition;
  r.mean_residual = std::abs(integral(q) - integral(qt));
  r.verdict_mean = gate(*r.mean_residual, tol);
  r.normalized_conclusion_l1 = l1_norm(subtract(q, qt));
  r.verdict_normalized_conclusion = gate(*r.normalized_conclusion_l1, tol);
  r.hypotheses_hold = r.hypotheses_hold && r.verdict_mean == Verdict::pass;
  r.consistent = !r.hypotheses_hold ||
                 (r.verdict_conclusion == Verdict::pass && r.verdict_normalized_conclusion == Verdict::pass);
}

}  // namespace detail

/// |lambda_n - lambda~_n - (qhat y~_n, y~_n)| for qhat = q - qt.
inline InnerCondition check_first_condition(const Potential& q, const Potential& qt, const BoundaryCondition& bc, int n,
                                            const CheckOptions& opts = {}) {
  detail::require_index(n);
  const auto ref = detail::numeric_reference(qt, bc, n, opts);
  const double lambda = eigenvalue(q, bc, static_cast<std::size_t>(n - 1), detail::solver_options(opts));
  return detail::inner_condition(subtract(q, qt), lambda, ref, opts.tolerances.condition);
}

/// min(|delta - ess inf qhat|, |delta - ess sup qhat|) and the closer branch.
inline ExtremalCondition check_extremal_condition(const Potential& q, const Potential& qt, const BoundaryCondition& bc,
                                                  int n, const CheckOptions& opts = {}) {
  detail::require_index(n);
  const auto s = detail::solver_options(opts);
  const auto k = static_cast<std::size_t>(n - 1);
  const double delta = eigenvalue(q, bc, k, s) - eigenvalue(qt, bc, k, s);
  return detail::extremal_condition(subtract(q, qt), delta, opts.tolerances.condition);
}

/// Both hypotheses and the conclusion q = qt + delta for the n-th eigenvalue.
inline ConditionReport check_main(const Potential& q, const Potential& qt, const BoundaryCondition& bc, int n,
                                  const CheckOptions& opts = {}) {
  detail::require_index(n);
  const auto ref = detail::numeric_reference(qt, bc, n, opts);
  const double lambda = eigenvalue(q, bc, static_cast<std::size_t>(n - 1), detail::solver_options(opts));
  return detail::assemble(CheckKind::main, q, qt, bc, n, lambda, ref, opts);
}

/// check_main plus the equal-mean hypothesis; the conclusion becomes q = qt.
inline ConditionReport check_main_normalized(const Potential& q, const Potential& qt, const BoundaryCondition& bc,
                                             int n, const CheckOptions& opts = {}) {
  auto r = check_main(q, qt, bc, n, opts);
  r.check = CheckKind::main_normalized;
  detail::add_mean_gate(r, q, qt);
  return r;
}

/// Dirichlet problem against q~ = 0 with the exact reference pair
/// lambda~_n = (n pi)^2, y~_n = sqrt(2) sin(n pi x).
inline ConditionReport check_dirichlet_corollary(const Potential& q, int n, const CheckOptions& opts = {}) {
  detail::require_index(n);
  const auto bc = BoundaryCondition::dirichlet();
  Reference ref;
  ref.lambda = std::pow(n * std::numbers::pi, 2);
  ref.basis.push_back(detail::dirichlet_sine(n, opts.solver.grid_size));
  const double lambda = eigenvalue(q, bc, static_cast<std::size_t>(n - 1), detail::solver_options(opts));
  return detail::assemble(CheckKind::dirichlet, q, Potential::zero(), bc, n, lambda, ref, opts);
}

/// check_dirichlet_corollary plus the gate |\int q| <= tol; the conclusion becomes q = 0.
inline ConditionReport check_dirichlet_zero_mean(const Potential& q, int n, const CheckOptions& opts = {}) {
  auto r = check_dirichlet_corollary(q, n, opts);
  r.check = CheckKind::dirichlet_zero_mean;
  detail::add_mean_gate(r, q, Potential::zero());
  return r;
}

/// Neumann ground state: lambda_0 = \int q forces q = lambda_0.
/// Reported against q~ = 0 (y~_0 = 1, lambda~_0 = 0) with n = 1.
inline ConditionReport check_classic(const Potential& q, const CheckOptions& opts = {}) {
  const auto bc = BoundaryCondition::neumann();
  Reference ref;
  ref.basis.emplace_back(opts.solver.grid_size, 1.0);
  const double lambda = eigenvalue(q, bc, 0, detail::solver_options(opts));
  auto r = detail::assemble(CheckKind::classic, q, Potential::zero(), bc, 1, lambda, ref, opts);
  r.verdict_extremal = Verdict::not_applicable;
  r.hypotheses_hold = r.verdict_inner == Verdict::pass;
  r.consistent = !r.hypotheses_hold || r.verdict_conclusion == Verdict::pass;
  return r;
}

/// 2 \int q sin^2(n pi x) against \int q - \int q cos(2 n pi x), with
/// the two sides evaluated by separate quadratures.
inline FourierIdentity fourier_identity_residual(const Potential& q, int n) {
  detail::require_index(n);
  FourierIdentity r;
  r.n = n;
  const double w = n * std::numbers::pi;
  r.lhs = integrate_weighted(q, [w](double x) {
            const double s = std::sin(w * x);
            return 2.0 * s * s;
          }).value;
  r.rhs = integral(q) - fourier_cos_coeff(q, n);
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace sltk

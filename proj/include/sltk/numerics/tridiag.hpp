#pragma once

/**
 * Symmetric tridiagonal eigensolver: Sturm-sequence bisection for the
 * eigenvalues and inverse iteration for the eigenvectors.
 *
 * An optional corner entry couples the first and last rows (periodic and
 * antiperiodic discretisations). The inertia count then uses LDL^T with a
 * bordered last column; the shifted solves in inverse iteration use a
 * pivoted band LU.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sltk/errors.hpp"

namespace sltk::num {

struct SymTridiag {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;  ///< length N-1; entry i couples rows i and i+1
  std::optional<double> corner;      ///< couples rows 0 and N-1

  std::size_t size() const noexcept { return diagonal.size(); }

  void validate() const {
    const std::size_t n = diagonal.size();
    if (n < 2) throw UsageError("SymTridiag: need N >= 2");
    if (off_diagonal.size() != n - 1) {
      throw UsageError("SymTridiag: off_diagonal must have length N-1");
    }
    if (corner && n < 3) throw UsageError("SymTridiag: corner coupling needs N >= 3");
  }

  /// Infinity norm, used to scale pivot guards and convergence thresholds.
  double norm_inf() const {
    const std::size_t n = diagonal.size();
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = std::abs(diagonal[i]);
      if (i > 0) row += std::abs(off_diagonal[i - 1]);
      if (i + 1 < n) row += std::abs(off_diagonal[i]);
      if (corner && (i == 0 || i + 1 == n)) row += std::abs(*corner);
      best = std::max(best, row);
    }
    return best;
  }

  /// y = M x
  std::vector<double> apply(const std::vector<double>& x) const {
    const std::size_t n = diagonal.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = diagonal[i] * x[i];
      if (i > 0) s += off_diagonal[i - 1] * x[i - 1];
      if (i + 1 < n) s += off_diagonal[i] * x[i + 1];
      y[i] = s;
    }
    if (corner) {
      y[0] += *corner * x[n - 1];
      y[n - 1] += *corner * x[0];
    }
    return y;
  }
};

/// Number of eigenvalues of m strictly below sigma (Sylvester inertia of m - sigma I).
inline std::size_t sturm_count(const SymTridiag& m, double sigma) {
  const std::size_t n = m.size();
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(m.norm_inf(), 1e-300);
  auto guard = [tiny](double d) { return std::abs(d) < tiny ? -tiny : d; };
  std::size_t negatives = 0;

  if (!m.corner) {
    double d = guard(m.diagonal[0] - sigma);
    if (d < 0.0) ++negatives;
    for (std::size_t i = 1; i < n; ++i) {
      const double b = m.off_diagonal[i - 1];
      d = guard(m.diagonal[i] - sigma - b * b / d);
      if (d < 0.0) ++negatives;
    }
    return negatives;
  }

  // Eliminate rows 0..N-2 in order; fill appears only in the last column (u)
  // and the trailing diagonal (s).
  double d = guard(m.diagonal[0] - sigma);
  double u = *m.corner;
  double s = m.diagonal[n - 1] - sigma;
  if (d < 0.0) ++negatives;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const double b = m.off_diagonal[i];
    const double last_col = (i + 1 == n - 2) ? m.off_diagonal[n - 2] : 0.0;
    s -= u * u / d;
    const double d_next = guard(m.diagonal[i + 1] - sigma - b * b / d);
    u = last_col - b * u / d;
    d = d_next;
    if (d < 0.0) ++negatives;
  }
  s = guard(s - u * u / d);
  if (s < 0.0) ++negatives;
  return negatives;
}

namespace detail {

/// LU with partial pivoting of a general band matrix (kl sub-, ku
/// super-diagonals). Row i stores columns [i - kl, i + kl + ku] so that
/// pivoting fill fits. Exact zero pivots are replaced by `tiny`, which is
/// what inverse iteration wants for singular shifts.
class BandLU {
 public:
  template <class Entry>
  BandLU(std::size_t n, std::size_t kl, std::size_t ku, Entry&& entry, double tiny)
      : n_(n), kl_(kl), ku_(ku), width_(2 * kl + ku + 1), a_(n * width_, 0.0), mult_(n * kl, 0.0), piv_(n) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j0 = i >= kl ? i - kl : 0;
      const std::size_t j1 = std::min(n - 1, i + ku);
      for (std::size_t j = j0; j <= j1; ++j) at(i, j) = entry(i, j);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t last_row = std::min(n - 1, i + kl);
      std::size_t p = i;
      for (std::size_t r = i + 1; r <= last_row; ++r) {
        if (std::abs(at(r, i)) > std::abs(at(p, i))) p = r;
      }
      piv_[i] = p;
      const std::size_t last_col = std::min(n - 1, i + kl + ku);
      if (p != i) {
        for (std::size_t j = i; j <= last_col; ++j) std::swap(at(i, j), at(p, j));
      }
      if (at(i, i) == 0.0) at(i, i) = tiny;
      for (std::size_t r = i + 1; r <= last_row; ++r) {
        const double f = at(r, i) / at(i, i);
        mult_[i * kl_ + (r - i - 1)] = f;
        at(r, i) = 0.0;
        if (f == 0.0) continue;
        for (std::size_t j = i + 1; j <= last_col; ++j) at(r, j) -= f * at(i, j);
      }
    }
  }

  void solve(std::vector<double>& b) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (piv_[i] != i) std::swap(b[i], b[piv_[i]]);
      const std::size_t last_row = std::min(n_ - 1, i + kl_);
      for (std::size_t r = i + 1; r <= last_row; ++r) b[r] -= mult_[i * kl_ + (r - i - 1)] * b[i];
    }
    for (std::size_t i = n_; i-- > 0;) {
      const std::size_t last_col = std::min(n_ - 1, i + kl_ + ku_);
      double s = b[i];
      for (std::size_t j = i + 1; j <= last_col; ++j) s -= at(i, j) * b[j];
      b[i] = s / at(i, i);
    }
  }

 private:
  double& at(std::size_t i, std::size_t j) { return a_[i * width_ + (j + kl_ - i)]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * width_ + (j + kl_ - i)]; }

  std::size_t n_, kl_, ku_, width_;
  std::vector<double> a_;
  std::vector<double> mult_;
  std::vector<std::size_t> piv_;
};

/// Solver for (m - sigma I) x = b. With a corner entry the unknowns are
/// interleaved (0, N-1, 1, N-2, ...), which turns the cyclic matrix into a
/// pentadiagonal one.
class ShiftedSolver {
 public:
  ShiftedSolver(const SymTridiag& m, double sigma, double tiny)
      : n_(m.size()), perm_(n_), lu_(make_lu(m, sigma, tiny, perm_)) {}

  void solve(std::vector<double>& b) const {
    std::vector<double> pb(n_);
    for (std::size_t p = 0; p < n_; ++p) pb[p] = b[perm_[p]];
    lu_.solve(pb);
    for (std::size_t p = 0; p < n_; ++p) b[perm_[p]] = pb[p];
  }

 private:
  static BandLU make_lu(const SymTridiag& m, double sigma, double tiny, std::vector<std::size_t>& perm) {
    const std::size_t n = m.size();
    for (std::size_t p = 0; p < n; ++p) {
      perm[p] = m.corner ? (p % 2 == 0 ? p / 2 : n - 1 - (p - 1) / 2) : p;
    }
    auto entry = [&](std::size_t r, std::size_t c) {
      const std::size_t i = perm[r], j = perm[c];
      if (i == j) return m.diagonal[i] - sigma;
      if (i + 1 == j) return m.off_diagonal[i];
      if (j + 1 == i) return m.off_diagonal[j];
      if (m.corner && ((i == 0 && j == n - 1) || (j == 0 && i == n - 1))) return *m.corner;
      return 0.0;
    };
    const std::size_t band = m.corner ? 2 : 1;
    return BandLU(n, band, band, entry, tiny);
  }

  std::size_t n_;
  std::vector<std::size_t> perm_;
  BandLU lu_;
};

inline double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace detail

/// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
inline double tridiag_eigenvalue(const SymTridiag& m, std::size_t k) {
  m.validate();
  const std::size_t n = m.size();
  if (k >= n) throw UsageError("tridiag_eigenvalue: index out of range");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(m.off_diagonal[i - 1]);
    if (i + 1 < n) r += std::abs(m.off_diagonal[i]);
    if (m.corner && (i == 0 || i + 1 == n)) r += std::abs(*m.corner);
    lo = std::min(lo, m.diagonal[i] - r);
    hi = std::max(hi, m.diagonal[i] + r);
  }
  const double pad = std::numeric_limits<double>::epsilon() * std::max(m.norm_inf(), 1.0);
  lo -= pad;
  hi += pad;
  for (int it = 0; it < 256; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * (std::abs(lo) + std::abs(hi))) break;
    if (sturm_count(m, mid) >= k + 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct TridiagEigen {
  std::vector<double> values;
  /// Eigenvectors with unit Euclidean norm, one per eigenvalue.
  std::vector<std::vector<double>> vectors;
};

/// Lowest k_max + 1 eigenpairs. Eigenvalues are the Rayleigh quotients of the
/// converged vectors. Inverse iteration starts from a fixed-seed
/// random vector; vectors of (nearly) equal eigenvalues are orthogonalised
/// against each other, so a double eigenvalue yields two orthonormal vectors.
inline TridiagEigen tridiag_eigen(const SymTridiag& m, std::size_t k_max, std::uint32_t seed = 20240607u) {
  m.validate();
  const std::size_t n = m.size();
  if (k_max >= n) throw UsageError("tridiag_eigen: k_max must be below the matrix size");
  const double mnorm = std::max(m.norm_inf(), 1e-300);
  const double eps = std::numeric_limits<double>::epsilon();
  const double tiny = eps * mnorm;
  const double residual_tol = 1e3 * eps * mnorm;
  const double cluster_tol = 1e-7 * mnorm;

  TridiagEigen out;
  out.values.reserve(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) out.values.push_back(tridiag_eigenvalue(m, k));

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (std::size_t k = 0; k <= k_max; ++k) {
    const double lambda = out.values[k];
    detail::ShiftedSolver solver(m, lambda, tiny);
    std::vector<double> x(n);
    for (double& v : x) v = dist(rng);
    bool converged = false;
    for (int it = 0; it < 50 && !converged; ++it) {
      solver.solve(x);
      for (std::size_t j = 0; j < k; ++j) {
        if (std::abs(out.values[j] - lambda) > cluster_tol) continue;
        const auto& w = out.vectors[j];
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += w[i] * x[i];
        for (std::size_t i = 0; i < n; ++i) x[i] -= dot * w[i];
      }
      const double nrm = detail::norm2(x);
      if (!(nrm > 0.0) || !std::isfinite(nrm)) {
        for (double& v : x) v = dist(rng);
        continue;
      }
      for (double& v : x) v /= nrm;
      if (it == 0) continue;
      const auto mx = m.apply(x);
      double rq = 0.0;
      for (std::size_t i = 0; i < n; ++i) rq += x[i] * mx[i];
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(mx[i] - rq * x[i]));
      converged = res <= residual_tol;
      if (converged) out.values[k] = rq;
    }
    if (!converged) {
      throw NumericalError("tridiag_eigen: inverse iteration did not converge for eigenvalue index " +
                           std::to_string(k));
    }
    out.vectors.push_back(std::move(x));
  }
  return out;
}

}  // namespace sltk::num

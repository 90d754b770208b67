#pragma once

// Command execution. Exit status: 0 ran and every hypothesis held (or the
// command checks none), 2 a hypothesis or the slope gate failed, 1 usage or
// numerical error. Files are written to a temporary name and renamed.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "sltk/ambarzumyan/checks.hpp"
#include "sltk/ambarzumyan/perturbation.hpp"
#include "sltk/ambarzumyan/report.hpp"
#include "sltk/ambarzumyan/spectrum_io.hpp"
#include "sltk/cli/config.hpp"
#include "sltk/potential/io.hpp"

namespace sltk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitHypothesisFailed = 2;

inline constexpr double kFourierTol = 1e-10;
inline constexpr double kSlopeGate = 1.8;

inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw UsageError("cannot write " + tmp.string());
    o << content;
    o.flush();
    if (!o) throw UsageError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace detail {

inline SolverOptions solver_for(const RunConfig& c, Backend b) {
  SolverOptions s;
  s.backend = b;
  s.tol.root_tol = c.solver_tol;
  s.grid_size = c.grid;
  return s;
}

inline CheckOptions check_for(const RunConfig& c, Backend b) {
  CheckOptions o;
  o.tolerances.condition = c.tol;
  o.tolerances.solver = c.solver_tol;
  o.solver = solver_for(c, b);
  return o;
}

inline int run_spectrum(const RunConfig& c, std::ostream& out) {
  const auto q = load_potential(c.q);
  const auto bc = parse_boundary_condition(c.bc);
  const auto k_max = static_cast<std::size_t>(c.k_max);
  const std::filesystem::path dir(c.out);
  std::string table = "index,backend,eigenvalue,node_count\n";
  for (auto b : selected_backends(c.backend)) {
    const auto opts = solver_for(c, b);
    const auto name = backend_name(resolve_backend(bc, b));
    const auto data = spectrum(q, bc, k_max, opts);
    std::string fun = "x";
    for (std::size_t k = 0; k <= k_max; ++k) fun += ",y" + std::to_string(k);
    fun += "\n";
    const auto grid = num::uniform_grid(c.grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      fun += format_double(grid[i]);
      for (const auto& p : data.pairs) fun += "," + format_double(p.eigenfunction[i]);
      fun += "\n";
    }
    for (const auto& p : data.pairs) {
      table += std::to_string(p.index) + "," + name + "," + format_double(p.eigenvalue) + "," +
               std::to_string(p.node_count) + "\n";
      out << "lambda_" << p.index << " (" << name << ") = " << format_double(p.eigenvalue) << "\n";
    }
    write_atomic(dir / ("eigenfunctions_" + name + ".csv"), fun);
    write_atomic(dir / ("spectrum_" + name + ".txt"), format_spectrum_text(data));
  }
  write_atomic(dir / "eigenvalues.csv", table);
  return kExitOk;
}

inline int report_exit(const std::vector<ConditionReport>& reports, std::ostream& err) {
  bool all_hold = true;
  for (const auto& r : reports) {
    if (!r.consistent) {
      err << "inconsistent report (" << r.backend << "): hypotheses hold but the conclusion residual "
          << format_double(r.conclusion_l1_residual) << " exceeds the tolerance\n";
      return kExitError;
    }
    all_hold = all_hold && r.hypotheses_hold;
  }
  return all_hold ? kExitOk : kExitHypothesisFailed;
}

inline int run_check(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto q = load_potential(c.q);
  std::vector<ConditionReport> reports;
  for (auto b : selected_backends(c.backend)) {
    const auto opts = check_for(c, b);
    switch (c.command) {
      case Command::check_classic:
        reports.push_back(check_classic(q, opts));
        break;
      case Command::check_dirichlet:
        reports.push_back(c.zero_mean ? check_dirichlet_zero_mean(q, c.n, opts) : check_dirichlet_corollary(q, c.n, opts));
        break;
      default: {
        const auto qt = load_potential(c.qt);
        const auto bc = parse_boundary_condition(c.bc);
        reports.push_back(c.normalized ? check_main_normalized(q, qt, bc, c.n, opts) : check_main(q, qt, bc, c.n, opts));
      }
    }
  }
  const std::filesystem::path dir(c.out);
  const auto text = format_reports_text(reports);
  write_atomic(dir / "report.txt", text);
  write_atomic(dir / "report.json", format_reports_json(reports));
  out << text;
  return report_exit(reports, err);
}

inline int run_fourier(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto q = load_potential(c.q);
  std::string csv = "n,lhs,rhs,residual\n";
  double worst = 0.0;
  for (int n = 1; n <= c.n_max; ++n) {
    const auto r = fourier_identity_residual(q, n);
    csv += std::to_string(n) + "," + format_double(r.lhs) + "," + format_double(r.rhs) + "," +
           format_double(r.residual) + "\n";
    worst = std::max(worst, r.residual);
  }
  write_atomic(std::filesystem::path(c.out) / "fourier_identity.csv", csv);
  out << "max residual over n = 1.." << c.n_max << ": " << format_double(worst) << "\n";
  if (worst > kFourierTol) {
    err << "numerical error: quadrature residual " << format_double(worst) << " exceeds " << format_double(kFourierTol)
        << "\n";
    return kExitError;
  }
  return kExitOk;
}

inline int run_perturbation(const RunConfig& c, std::ostream& out) {
  const auto qt = load_potential(c.qt);
  const auto p = load_potential(c.p);
  const auto bc = parse_boundary_condition(c.bc);
  std::string csv = "backend,eps,lambda,first_order,remainder\n";
  std::string summary;
  bool ok = true;
  for (auto b : selected_backends(c.backend)) {
    auto opts = tight_solver_options(solver_for(c, b));
    const auto name = backend_name(resolve_backend(bc, b));
    const auto s = perturbation_study(qt, p, bc, c.n, c.eps, opts);
    for (const auto& r : s.rows) {
      csv += name + "," + format_double(r.eps) + "," + format_double(r.lambda) + "," + format_double(r.first_order) +
             "," + format_double(r.remainder) + "\n";
    }
    if (!summary.empty()) summary += "\n";
    summary += "backend=" + name + "\nbc=" + bc.name() + "\nn=" + std::to_string(s.n) +
               "\nlambda_ref=" + format_double(s.lambda_ref) + "\ninner=" + format_double(s.inner) +
               "\nslope=" + format_double(s.slope) + "\nslope_gate=" + format_double(kSlopeGate) + "\n";
    ok = ok && s.slope >= kSlopeGate;
  }
  const std::filesystem::path dir(c.out);
  write_atomic(dir / "perturbation.csv", csv);
  write_atomic(dir / "perturbation_summary.txt", summary);
  out << csv << "\n" << summary;
  return ok ? kExitOk : kExitHypothesisFailed;
}

inline void demo_fixture(std::ostream& out, const std::string& title, const Potential& q, const CheckOptions& opts) {
  out << "fixture: " << title << "\n";
  out << "  q = " << q.describe() << "\n";
  for (int n : {1, 2}) {
    const auto r = check_dirichlet_corollary(q, n, opts);
    out << "  n = " << n << "\n";
    out << "    lambda_n: " << format_double(r.lambda_n) << "\n";
    out << "    (n pi)^2: " << format_double(r.lambda_ref) << "\n";
    out << "    delta = lambda_n - (n pi)^2: " << format_double(r.delta) << "\n";
    out << "    2 int q sin^2(n pi x) dx: " << format_double(r.inner_product_value) << "\n";
    out << "    sine-moment/dirichlet identity residual: " << format_double(r.residual_inner) << "\n";
    out << "    ess inf q, ess sup q: " << format_double(*r.ess_inf_qhat) << ", "
        << format_double(*r.ess_sup_qhat) << "\n";
    out << "    extremal residual (" << r.extremal_branch << "): "
        << format_double(*r.residual_extremal) << "\n";
    out << "    conclusion_l1_residual = ||q - delta||_1: " << format_double(r.conclusion_l1_residual) << "\n";
    out << "    verdicts: inner " << verdict_name(r.verdict_inner) << ", extremal " << verdict_name(r.verdict_extremal)
        << ", conclusion " << verdict_name(r.verdict_conclusion) << "\n";
    if (r.hypotheses_hold) {
      out << "    both hypotheses hold, so q = delta almost everywhere\n";
    } else {
      out << "    a hypothesis fails, so no conclusion is drawn" << (r.consistent ? "" : " (INCONSISTENT)") << "\n";
    }
  }
  out << "\n";
}

inline int run_demo(const RunConfig& c, std::ostream& out) {
  auto opts = check_for(c, c.backend == "both" ? Backend::automatic : parse_backend(c.backend));
  out << "Dirichlet problem -y'' + q y = lambda y on (0,1), y(0) = y(1) = 0\n";
  out << "reference q~ = 0: lambda~_n = (n pi)^2, y~_n = sqrt(2) sin(n pi x)\n";
  out << "hypotheses: lambda_n - (n pi)^2 = 2 int q sin^2(n pi x) dx, and it equals ess inf q or ess sup q\n";
  out << "tolerance " << format_double(c.tol) << "\n\n";
  demo_fixture(out, "constant shift", Potential::constant(2.5), opts);
  demo_fixture(out, "non-constant", Potential::cos2pi(), opts);
  return kExitOk;
}

}  // namespace detail

/// Executes one command; diagnostics go to `err`.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    switch (c.command) {
      case Command::spectrum:
        return detail::run_spectrum(c, out);
      case Command::check_classic:
      case Command::check_main:
      case Command::check_dirichlet:
        return detail::run_check(c, out, err);
      case Command::fourier_identity:
        return detail::run_fourier(c, out, err);
      case Command::perturbation_study:
        return detail::run_perturbation(c, out);
      case Command::demo:
        return detail::run_demo(c, out);
    }
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const UnsupportedError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "numerical error: " << e.what() << "\n";
  } catch (const std::filesystem::filesystem_error& e) {
    err << "usage error: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace sltk::cli

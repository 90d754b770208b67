// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sys/wait.h>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures/catalog.hpp"
#include "oracles/closed_forms.hpp"
#include "sltk/ambarzumyan/checks.hpp"
#include "sltk/ambarzumyan/perturbation.hpp"
#include "sltk/solver/solver.hpp"

#ifndef SLTK_CLI_PATH
#error "SLTK_CLI_PATH must name the sltk executable"
#endif

using namespace sltk;
namespace fs = std::filesystem;

namespace {

const double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  char time_buf[32];
  std::snprintf(time_buf, sizeof time_buf, "%.2fs", secs);
  std::printf("[%s] %2d %s: %s (%s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), time_buf);
  std::fflush(stdout);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

SolverOptions with_backend(Backend b) {
  SolverOptions o;
  o.backend = b;
  return o;
}

Outcome free_spectrum(const BoundaryCondition& bc, const std::string& name, std::size_t first, std::size_t count) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (auto b : {Backend::shooting, Backend::matrix}) {
    const auto vals = spectrum(Potential::zero(), bc, first + count - 1, with_backend(b)).eigenvalues();
    for (std::size_t k = first; k < first + count; ++k) {
      const double exact = oracle::free_eigenvalue(name, k);
      worst = std::max(worst, std::abs(vals[k] - exact) / std::max(1.0, std::abs(exact)));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-8 && secs < 10.0, "max relative error " + sci(worst) + " over both backends, " + sci(secs) + " s"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  report(1, "free Dirichlet spectrum n = 1..20", [] {
    return free_spectrum(BoundaryCondition::dirichlet(), "dirichlet", 0, 20);
  });

  report(2, "free Neumann spectrum {0, pi^2, 4 pi^2, ...}", [] {
    return free_spectrum(BoundaryCondition::neumann(), "neumann", 0, 20);
  });

  report(3, "forward suite: check_main(qt + c, qt) passes every gate", [] {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    const std::vector<Potential> refs{Potential::zero(), Potential::cos2pi(), fixtures::step13()};
    const std::vector<BoundaryCondition> bcs{BoundaryCondition::dirichlet(), BoundaryCondition::neumann(),
                                             BoundaryCondition::robin(), BoundaryCondition::periodic()};
    int runs = 0, bad = 0;
    double worst = 0.0;
    for (const auto& qt : refs) {
      for (const auto& bc : bcs) {
        for (int n = 1; n <= 3; ++n) {
          for (int i = 0; i < 10; ++i) {
            const auto r = check_main(shift(qt, dist(rng)), qt, bc, n);
            ++runs;
            worst = std::max({worst, r.residual_inner, r.residual_extremal.value_or(INFINITY), r.conclusion_l1_residual});
            if (r.verdict_inner != Verdict::pass || r.verdict_extremal != Verdict::pass ||
                r.verdict_conclusion != Verdict::pass)
              ++bad;
          }
        }
      }
    }
    return Outcome{bad == 0, std::to_string(runs) + " runs, " + std::to_string(bad) + " failures, worst residual " +
                                 sci(worst) + " (gate 1e-6)"};
  });

  report(4, "contrapositive suite over 30 non-constant differences", [] {
    const std::vector<Potential> refs{Potential::zero(), Potential::cos2pi(), fixtures::step13()};
    const std::vector<Potential> perts{
        Potential::cos2pi(),
        Potential::sin2pi(1, 0.5),
        Potential::cos2pi(2, -1.5),
        Potential::custom_table(0.0, {0.3, 0.0, 0.25}, {0.0, -0.5}),
        Potential::piecewise({0.0, 0.5, 1.0}, {0.0, 2.0}),
        Potential::piecewise({0.0, 0.2, 0.7, 1.0}, {-1.0, 4.0, 2.0}),
        Potential::piecewise({0.0, 0.3, 1.0}, {0.5, 0.0}),
        Potential::sin2pi(3, 2.0),
        Potential::custom_table(1.0, {0.0, -0.7}, {0.1}),
        Potential::piecewise({0.0, 0.1, 0.9, 1.0}, {5.0, 0.0, 5.0}),
    };
    const std::vector<BoundaryCondition> bcs{BoundaryCondition::dirichlet(), BoundaryCondition::neumann(),
                                             BoundaryCondition::robin(), BoundaryCondition::periodic(),
                                             BoundaryCondition::separated(0.3, 2.0)};
    int fixtures_run = 0, implications = 0, violations = 0;
    for (std::size_t i = 0; i < perts.size(); ++i) {
      for (std::size_t j = 0; j < refs.size(); ++j) {
        const auto& qt = refs[j];
        const auto& bc = bcs[(i + j) % bcs.size()];
        const int n = static_cast<int>(1 + (i + 2 * j) % 3);
        const auto r = check_main(add(qt, perts[i]), qt, bc, n);
        ++fixtures_run;
        if (r.conclusion_l1_residual > 1e-3) {
          ++implications;
          const bool some_fail = r.residual_inner > 1e-6 || !r.residual_extremal || *r.residual_extremal > 1e-6;
          if (!some_fail) ++violations;
        }
      }
    }
    return Outcome{fixtures_run == 30 && violations == 0,
                   std::to_string(fixtures_run) + " fixtures, " + std::to_string(implications) +
                       " with conclusion residual > 1e-3, " + std::to_string(violations) + " without a failing hypothesis"};
  });

  report(5, "inner product (cos 2 pi x y_n, y_n) = -1/2 (n = 1), 0 (n >= 2)", [] {
    double worst = 0.0;
    for (int n = 1; n <= 10; ++n) {
      const auto y = detail::dirichlet_sine(n, num::kDefaultQuadratureNodes);
      const double v = weighted_inner_product(Potential::cos2pi(), y);
      worst = std::max(worst, std::abs(v - (n == 1 ? -0.5 : 0.0)));
    }
    return Outcome{worst <= 1e-9, "max deviation " + sci(worst) + " over n = 1..10"};
  });

  report(6, "sine-moment identity across the catalog, n <= 10", [] {
    double worst = 0.0;
    int count = 0;
    for (const auto& f : fixtures::catalog()) {
      for (int n = 1; n <= 10; ++n) {
        worst = std::max(worst, fourier_identity_residual(f.q, n).residual);
        ++count;
      }
    }
    return Outcome{worst <= 1e-10, std::to_string(count) + " cases, max residual " + sci(worst)};
  });

  report(7, "first-order perturbation slope >= 1.8", [] {
    struct Combo {
      Potential qt, p;
      BoundaryCondition bc;
      int n;
    };
    const auto step3 = Potential::piecewise({0.0, 0.2, 0.7, 1.0}, {-1.0, 4.0, 2.0});
    const std::vector<Combo> combos{
        {Potential::zero(), Potential::cos2pi(), BoundaryCondition::dirichlet(), 1},
        {Potential::zero(), Potential::cos2pi(), BoundaryCondition::neumann(), 2},
        {Potential::zero(), fixtures::step13(), BoundaryCondition::dirichlet(), 1},
        {Potential::zero(), fixtures::step13(), BoundaryCondition::robin(), 3},
        {Potential::cos2pi(), Potential::sin2pi(2, 1.0), BoundaryCondition::dirichlet(), 2},
        {Potential::cos2pi(), Potential::sin2pi(2, 1.0), BoundaryCondition::robin(), 1},
        {fixtures::step13(), step3, BoundaryCondition::neumann(), 1},
        {fixtures::step13(), step3, BoundaryCondition::dirichlet(), 3},
        {Potential::zero(), fixtures::smooth_sampled(), BoundaryCondition::neumann(), 2},
    };
    const auto opts = tight_solver_options();
    double lowest = INFINITY;
    for (const auto& c : combos) {
      lowest = std::min(lowest, perturbation_study(c.qt, c.p, c.bc, c.n, {1e-1, 1e-2, 1e-3}, opts).slope);
    }
    return Outcome{lowest >= 1.8, std::to_string(combos.size()) + " combinations, lowest slope " + sci(lowest)};
  });

  report(8, "cross-backend agreement, separated conditions, k <= 10", [] {
    double worst_ratio = 0.0, worst_extrap_ratio = 0.0, worst_extrap = 0.0, worst_literal = 0.0;
    int cases = 0;
    for (const auto& f : fixtures::catalog()) {
      for (const auto& bc : fixtures::separated_bcs()) {
        const auto shoot = spectrum(f.q, bc, 10, with_backend(Backend::shooting)).eigenvalues();
        const auto raw = matrix_eigen(f.q, bc, 1024, 10);
        const auto extrap = matrix_eigenvalues(f.q, bc, 10, with_backend(Backend::matrix));
        const auto d = discretize(f.q, bc, 1024);
        for (std::size_t k = 0; k <= 10; ++k) {
          const double bound = matrix_error_bound(f.q, shoot[k], d.h) + 1e-6;
          worst_ratio = std::max(worst_ratio, std::abs(shoot[k] - raw.pairs[k].eigenvalue) / bound);
          worst_extrap = std::max(worst_extrap, std::abs(shoot[k] - extrap[k]));
          worst_extrap_ratio = std::max(worst_extrap_ratio, std::abs(shoot[k] - extrap[k]) / bound);
          const double literal = 5.0 * std::pow(kPi * static_cast<double>(k) + kPi, 2) * d.h * d.h + 1e-6;
          worst_literal = std::max(worst_literal, std::abs(shoot[k] - extrap[k]) / literal);
          ++cases;
        }
      }
    }
    return Outcome{worst_ratio <= 1.0 && worst_extrap_ratio <= 1.0,
                   std::to_string(cases) + " eigenvalues; difference / documented bound <= " + sci(worst_ratio) +
                       " at N = 1024, <= " + sci(worst_extrap_ratio) + " extrapolated; extrapolated max difference " +
                       sci(worst_extrap) +
                       ", which is " + sci(worst_literal) + " of 5 (k pi + pi)^2 h^2 + 1e-6"};
  });

  report(9, "shift invariance, 200 randomized cases", [] {
    std::mt19937_64 rng(9);
    const auto cat = fixtures::catalog();
    auto bcs = fixtures::separated_bcs();
    bcs.push_back(BoundaryCondition::periodic());
    std::uniform_int_distribution<std::size_t> pick_q(0, cat.size() - 1), pick_bc(0, bcs.size() - 1), pick_k(0, 5);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto& q = cat[pick_q(rng)].q;
      const auto& bc = bcs[pick_bc(rng)];
      const auto k = pick_k(rng);
      const double c = dist(rng);
      const double base = eigenvalue(q, bc, k);
      const double moved = eigenvalue(shift(q, c), bc, k);
      worst = std::max(worst, std::abs(moved - base - c));
    }
    return Outcome{worst <= 1e-8, "max |lambda(q + c) - lambda(q) - c| = " + sci(worst)};
  });

  report(10, "oscillation: node count equals index, k <= 10", [] {
    int pairs = 0, bad = 0;
    for (const auto& f : fixtures::catalog()) {
      for (const auto& bc : fixtures::separated_bcs()) {
        for (auto b : {Backend::shooting, Backend::matrix}) {
          for (const auto& p : spectrum(f.q, bc, 10, with_backend(b)).pairs) {
            ++pairs;
            if (p.node_count != p.index) ++bad;
          }
        }
      }
    }
    return Outcome{bad == 0, std::to_string(pairs) + " eigenpairs over both backends, " + std::to_string(bad) + " mismatches"};
  });

  report(11, "CLI reports byte-identical across repeated runs", [] {
    const auto dir = fs::temp_directory_path() / "sltk_acceptance_cli";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "q.pot") << "kind = piecewise\nbreakpoints = 0, 0.2, 0.7, 1\nvalues = -1, 4, 2\n";
    std::ofstream(dir / "qt.pot") << "kind = analytic\ntag = cos2pi\n";
    std::ofstream(dir / "run.cfg") << "command = check-main\nq = q.pot\nqt = qt.pot\nbc = robin\nn = 2\nbackend = both\n";
    std::vector<std::string> texts, jsons;
    for (int run = 0; run < 2; ++run) {
      const auto out = dir / ("out" + std::to_string(run));
      const std::string cmd = std::string("\"") + SLTK_CLI_PATH + "\" run --config \"" + (dir / "run.cfg").string() +
                              "\" --out \"" + out.string() + "\" > /dev/null";
      const int status = std::system(cmd.c_str());
      if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) == 1) {
        return Outcome{false, "sltk exited with status " + std::to_string(status)};
      }
      texts.push_back(slurp(out / "report.txt"));
      jsons.push_back(slurp(out / "report.json"));
    }
    const bool same = !texts[0].empty() && texts[0] == texts[1] && jsons[0] == jsons[1];
    const bool round_trip = format_reports_text(parse_reports_text(texts[0])) == texts[0] &&
                            format_reports_json(parse_reports_json(jsons[0])) == jsons[0];
    fs::remove_all(dir);
    return Outcome{same && round_trip, std::string(same ? "identical" : "different") + " text and JSON reports over two processes, " +
                                           (round_trip ? "re-parse reproduces the bytes" : "re-parse differs")};
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

// sltk: spectra, uniqueness checks and perturbation sweeps from the command line.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sltk/cli/config.hpp"
#include "sltk/cli/run.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::string> q, qt, p, bc, backend, out;
  std::optional<int> n, k_max, n_max;
  std::optional<double> tol, solver_tol;
  std::optional<std::size_t> grid;
  std::vector<double> eps;
  bool normalized = false;
  bool zero_mean = false;
};

void add_options(CLI::App* app, Overrides& o, bool config_required) {
  auto* cfg = app->add_option("--config,-c", o.config, "run configuration file");
  if (config_required) cfg->required();
  app->add_option("--q", o.q, "potential file");
  app->add_option("--qt", o.qt, "reference potential file");
  app->add_option("--p", o.p, "perturbation direction file");
  app->add_option("--bc", o.bc, "dirichlet | neumann | robin | periodic | antiperiodic | separated(a,b)");
  app->add_option("--n", o.n, "1-based eigenvalue index");
  app->add_option("--k-max", o.k_max, "highest 0-based index for spectrum");
  app->add_option("--n-max", o.n_max, "highest n for fourier-identity");
  app->add_option("--eps", o.eps, "perturbation sizes")->delimiter(',');
  app->add_option("--tol", o.tol, "condition tolerance (default 1e-6)");
  app->add_option("--solver-tol", o.solver_tol, "eigenvalue tolerance (default 1e-9)");
  app->add_option("--grid", o.grid, "eigenfunction samples, odd (default 2049)");
  app->add_option("--backend", o.backend, "shooting | matrix | both | auto");
  app->add_option("--out", o.out, "output directory");
  app->add_flag("--normalized", o.normalized, "check-main: add the equal-mean hypothesis");
  app->add_flag("--zero-mean", o.zero_mean, "check-dirichlet: add the zero-mean hypothesis");
}

sltk::cli::RunConfig merge(const Overrides& o) {
  sltk::cli::RunConfig c = o.config.empty() ? sltk::cli::RunConfig{} : sltk::cli::load_config(o.config);
  if (o.q) c.q = *o.q;
  if (o.qt) c.qt = *o.qt;
  if (o.p) c.p = *o.p;
  if (o.bc) c.bc = *o.bc;
  if (o.backend) c.backend = *o.backend;
  if (o.out) c.out = *o.out;
  if (o.n) c.n = *o.n;
  if (o.k_max) c.k_max = *o.k_max;
  if (o.n_max) c.n_max = *o.n_max;
  if (o.tol) c.tol = *o.tol;
  if (o.solver_tol) c.solver_tol = *o.solver_tol;
  if (o.grid) c.grid = *o.grid;
  if (!o.eps.empty()) c.eps = o.eps;
  if (o.normalized) c.normalized = true;
  if (o.zero_mean) c.zero_mean = true;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sturm-Liouville spectra and uniqueness checks"};
  app.require_subcommand(1);
  Overrides o;
  std::vector<std::pair<CLI::App*, sltk::cli::Command>> subs;
  const std::vector<std::string> help{
      "eigenvalue table and eigenfunction samples for k = 0..k_max",
      "Neumann ground state against the mean of q",
      "both hypotheses and the conclusion for q against qt",
      "Dirichlet check against q~ = 0 with the exact sine eigenfunctions",
      "sine-moment against mean minus cosine coefficient, n = 1..n_max",
      "first-order eigenvalue remainder over the eps sweep",
      "printed Dirichlet walkthrough",
  };
  std::size_t i = 0;
  for (const auto& [cmd, name] : sltk::cli::command_names()) {
    auto* sub = app.add_subcommand(name, help[i++]);
    add_options(sub, o, false);
    subs.emplace_back(sub, cmd);
  }
  auto* run = app.add_subcommand("run", "run the command named in a configuration file");
  add_options(run, o, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sltk::cli::kExitError;
  }

  sltk::cli::RunConfig config;
  try {
    config = merge(o);
  } catch (const sltk::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return sltk::cli::kExitError;
  }
  if (run->parsed()) {
    if (!config.command_set) {
      std::cerr << "usage error: " << o.config << ": missing 'command'\n";
      return sltk::cli::kExitError;
    }
  } else {
    for (const auto& [sub, cmd] : subs) {
      if (sub->parsed()) config.command = cmd;
    }
  }
  return sltk::cli::run(config, std::cout, std::cerr);
}

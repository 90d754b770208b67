#pragma once

// Run configuration files. Grammar: one "key = value" per line, '#' comments.
//
//   command      = spectrum | check-classic | check-main | check-dirichlet |
//                  fourier-identity | perturbation-study | demo
//   q            = path to a potential file (relative to the config file)
//   qt           = reference potential file        (check-main, perturbation-study)
//   p            = perturbation direction file     (perturbation-study)
//   bc           = dirichlet | neumann | robin | periodic | antiperiodic | separated(a, b)
//   n            = 1-based index                   (check-*, perturbation-study)
//   k_max        = highest 0-based index           (spectrum)
//   n_max        = highest n                       (fourier-identity)
//   eps          = comma-separated list            (perturbation-study)
//   normalized   = true | false                    (check-main: add the equal-mean gate)
//   zero_mean    = true | false                    (check-dirichlet: add the zero-mean gate)
//   tol          = condition tolerance, default 1e-6
//   solver_tol   = eigenvalue tolerance, default 1e-9
//   grid         = eigenfunction samples (odd), default 2049
//   backend      = shooting | matrix | both | auto
//   out          = output directory (relative to the config file)

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sltk/errors.hpp"
#include "sltk/kv.hpp"
#include "sltk/solver/boundary.hpp"
#include "sltk/solver/solver.hpp"

namespace sltk::cli {

enum class Command { spectrum, check_classic, check_main, check_dirichlet, fourier_identity, perturbation_study, demo };

inline const std::vector<std::pair<Command, std::string>>& command_names() {
  static const std::vector<std::pair<Command, std::string>> names{
      {Command::spectrum, "spectrum"},
      {Command::check_classic, "check-classic"},
      {Command::check_main, "check-main"},
      {Command::check_dirichlet, "check-dirichlet"},
      {Command::fourier_identity, "fourier-identity"},
      {Command::perturbation_study, "perturbation-study"},
      {Command::demo, "demo"},
  };
  return names;
}

inline std::string command_name(Command c) {
  for (const auto& [k, v] : command_names()) {
    if (k == c) return v;
  }
  return "?";
}

inline std::optional<Command> parse_command(std::string_view s) {
  for (const auto& [k, v] : command_names()) {
    if (v == s) return k;
  }
  return std::nullopt;
}

struct RunConfig {
  Command command = Command::demo;
  bool command_set = false;  ///< the document named a command
  std::string q;
  std::string qt;
  std::string p;
  std::string bc = "dirichlet";
  int n = 1;
  int k_max = 4;
  int n_max = 10;
  std::vector<double> eps{1e-1, 1e-2, 1e-3};
  bool normalized = false;
  bool zero_mean = false;
  double tol = 1e-6;
  double solver_tol = 1e-9;
  std::size_t grid = 2049;
  std::string backend = "auto";
  std::string out = "out";
};

/// Backends selected by `backend`; "both" runs shooting then matrix.
inline std::vector<Backend> selected_backends(const std::string& name) {
  if (name == "both") return {Backend::shooting, Backend::matrix};
  return {parse_backend(name)};
}

/// Checks the fields a command needs; throws UsageError.
inline void validate(const RunConfig& c) {
  auto need = [&](const std::string& v, const char* key) {
    if (v.empty()) throw UsageError(command_name(c.command) + ": missing '" + key + "'");
  };
  switch (c.command) {
    case Command::spectrum:
    case Command::check_classic:
    case Command::check_dirichlet:
    case Command::fourier_identity:
      need(c.q, "q");
      break;
    case Command::check_main:
      need(c.q, "q");
      need(c.qt, "qt");
      break;
    case Command::perturbation_study:
      need(c.qt, "qt");
      need(c.p, "p");
      break;
    case Command::demo:
      break;
  }
  if (c.n < 1) throw UsageError("n must be >= 1, got " + std::to_string(c.n));
  if (c.k_max < 0 || c.k_max > 50) throw UsageError("k_max must be in 0..50, got " + std::to_string(c.k_max));
  if (c.n_max < 1) throw UsageError("n_max must be >= 1, got " + std::to_string(c.n_max));
  if (!(c.tol > 0.0) || !(c.solver_tol > 0.0)) throw UsageError("tolerances must be positive");
  if (c.grid < 3 || c.grid % 2 == 0) throw UsageError("grid must be odd and >= 3");
  (void)parse_boundary_condition(c.bc);
  (void)selected_backends(c.backend);
}

namespace detail {

inline bool config_bool(const KvDocument& doc, const KvEntry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  doc.fail(e, "expected true or false for '" + e.key + "'");
}

inline std::string resolve_path(const std::filesystem::path& base, const std::string& v) {
  const std::filesystem::path p(v);
  return (p.is_absolute() ? p : base / p).lexically_normal().string();
}

}  // namespace detail

/// Parses a config document; relative paths resolve against `base_dir`.
inline RunConfig config_from_document(const KvDocument& doc, const std::filesystem::path& base_dir) {
  RunConfig c;
  for (const auto& e : doc.entries()) {
    const auto& k = e.key;
    if (k == "command") {
      auto cmd = parse_command(e.value);
      if (!cmd) doc.fail(e, "unknown command '" + e.value + "'");
      c.command = *cmd;
      c.command_set = true;
    } else if (k == "q") {
      c.q = detail::resolve_path(base_dir, e.value);
    } else if (k == "qt") {
      c.qt = detail::resolve_path(base_dir, e.value);
    } else if (k == "p") {
      c.p = detail::resolve_path(base_dir, e.value);
    } else if (k == "out") {
      c.out = detail::resolve_path(base_dir, e.value);
    } else if (k == "bc") {
      try {
        (void)parse_boundary_condition(e.value);
      } catch (const UsageError& err) {
        doc.fail(e, err.what());
      }
      c.bc = e.value;
    } else if (k == "backend") {
      if (e.value != "both" && e.value != "shooting" && e.value != "matrix" && e.value != "auto") {
        doc.fail(e, "unknown backend '" + e.value + "'");
      }
      c.backend = e.value;
    } else if (k == "n") {
      c.n = static_cast<int>(doc.integer(e));
    } else if (k == "k_max") {
      c.k_max = static_cast<int>(doc.integer(e));
    } else if (k == "n_max") {
      c.n_max = static_cast<int>(doc.integer(e));
    } else if (k == "grid") {
      const auto g = doc.integer(e);
      if (g < 3 || g % 2 == 0) doc.fail(e, "grid must be odd and >= 3");
      c.grid = static_cast<std::size_t>(g);
    } else if (k == "eps") {
      c.eps = doc.numbers(e);
    } else if (k == "tol") {
      c.tol = doc.number(e);
    } else if (k == "solver_tol") {
      c.solver_tol = doc.number(e);
    } else if (k == "normalized") {
      c.normalized = detail::config_bool(doc, e);
    } else if (k == "zero_mean") {
      c.zero_mean = detail::config_bool(doc, e);
    } else {
      throw ParseError(doc.source(), e.line, 1, "unknown key '" + k + "'");
    }
  }
  return c;
}

inline RunConfig load_config(const std::string& path) {
  const auto doc = KvDocument::load(path);
  return config_from_document(doc, std::filesystem::path(path).parent_path());
}

}  // namespace sltk::cli

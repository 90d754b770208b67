#pragma once

// ConditionReport: residuals, tolerances and verdicts of one uniqueness check,
// with a key=value text form and a JSON form. Both print doubles with 17
// significant digits and parse back to an identical value.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sltk/decimal.hpp"
#include "sltk/errors.hpp"

namespace sltk {

enum class Verdict { pass, fail, unsupported, not_applicable };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::unsupported:
      return "unbounded-unsupported";
    case Verdict::not_applicable:
      break;
  }
  return "not-applicable";
}

inline Verdict parse_verdict(std::string_view s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "unbounded-unsupported") return Verdict::unsupported;
  if (s == "not-applicable") return Verdict::not_applicable;
  throw UsageError("unknown verdict '" + std::string(s) + "'");
}

inline Verdict gate(double residual, double tol) { return residual <= tol ? Verdict::pass : Verdict::fail; }

enum class CheckKind { classic, main, main_normalized, dirichlet, dirichlet_zero_mean };

inline std::string check_name(CheckKind k) {
  switch (k) {
    case CheckKind::classic:
      return "classic";
    case CheckKind::main:
      return "main";
    case CheckKind::main_normalized:
      return "main-normalized";
    case CheckKind::dirichlet:
      return "dirichlet";
    case CheckKind::dirichlet_zero_mean:
      break;
  }
  return "dirichlet-zero-mean";
}

inline CheckKind parse_check_kind(std::string_view s) {
  for (auto k : {CheckKind::classic, CheckKind::main, CheckKind::main_normalized, CheckKind::dirichlet,
                 CheckKind::dirichlet_zero_mean}) {
    if (check_name(k) == s) return k;
  }
  throw UsageError("unknown check '" + std::string(s) + "'");
}

struct ReportTolerances {
  double condition = 1e-6;
  double solver = 1e-9;
  bool operator==(const ReportTolerances&) const = default;
};

struct ConditionReport {
  CheckKind check = CheckKind::main;
  std::string q;
  std::string qt;
  std::string bc;
  int n = 1;              ///< 1-based index
  std::size_t index = 0;  ///< 0-based solver index, n - 1
  std::string backend;

  double lambda_n = 0.0;    ///< eigenvalue of q
  double lambda_ref = 0.0;  ///< eigenvalue of the reference potential
  double delta = 0.0;       ///< lambda_n - lambda_ref
  double inner_product_value = 0.0;
  std::optional<double> ess_inf_qhat;  ///< empty when the difference is unbounded
  std::optional<double> ess_sup_qhat;

  double residual_inner = 0.0;
  std::optional<double> residual_extremal;
  std::string extremal_branch = "none";  ///< inf | sup | none
  double proof_identity_residual = 0.0;
  double conclusion_l1_residual = 0.0;
  std::optional<double> conclusion_linf_residual;
  std::optional<double> mean_residual;
  std::optional<double> normalized_conclusion_l1;

  bool degenerate = false;
  std::size_t eigenspace_dim = 1;
  ReportTolerances tolerances;

  Verdict verdict_inner = Verdict::fail;
  Verdict verdict_extremal = Verdict::fail;
  Verdict verdict_mean = Verdict::not_applicable;
  Verdict verdict_conclusion = Verdict::fail;
  Verdict verdict_normalized_conclusion = Verdict::not_applicable;
  /// every hypothesis of the checked statement passes
  bool hypotheses_hold = false;
  /// hypotheses_hold implies every conclusion passes
  bool consistent = true;

  bool operator==(const ConditionReport&) const = default;
};

namespace detail {

inline std::string opt_text(const std::optional<double>& v, std::string_view empty) {
  return v ? format_double(*v) : std::string(empty);
}

inline std::vector<std::pair<std::string, std::string>> report_fields(const ConditionReport& r) {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return {
      {"check", check_name(r.check)},
      {"q", r.q},
      {"qt", r.qt},
      {"bc", r.bc},
      {"n", std::to_string(r.n)},
      {"index", std::to_string(r.index)},
      {"backend", r.backend},
      {"lambda_n", format_double(r.lambda_n)},
      {"lambda_ref", format_double(r.lambda_ref)},
      {"delta", format_double(r.delta)},
      {"inner_product_value", format_double(r.inner_product_value)},
      {"ess_inf_qhat", opt_text(r.ess_inf_qhat, "unbounded")},
      {"ess_sup_qhat", opt_text(r.ess_sup_qhat, "unbounded")},
      {"residual_inner", format_double(r.residual_inner)},
      {"residual_extremal", opt_text(r.residual_extremal, "none")},
      {"extremal_branch", r.extremal_branch},
      {"proof_identity_residual", format_double(r.proof_identity_residual)},
      {"conclusion_l1_residual", format_double(r.conclusion_l1_residual)},
      {"conclusion_linf_residual", opt_text(r.conclusion_linf_residual, "none")},
      {"mean_residual", opt_text(r.mean_residual, "none")},
      {"normalized_conclusion_l1", opt_text(r.normalized_conclusion_l1, "none")},
      {"degenerate", b(r.degenerate)},
      {"eigenspace_dim", std::to_string(r.eigenspace_dim)},
      {"tol_condition", format_double(r.tolerances.condition)},
      {"tol_solver", format_double(r.tolerances.solver)},
      {"verdict_inner", verdict_name(r.verdict_inner)},
      {"verdict_extremal", verdict_name(r.verdict_extremal)},
      {"verdict_mean", verdict_name(r.verdict_mean)},
      {"verdict_conclusion", verdict_name(r.verdict_conclusion)},
      {"verdict_normalized_conclusion", verdict_name(r.verdict_normalized_conclusion)},
      {"hypotheses_hold", b(r.hypotheses_hold)},
      {"consistent", b(r.consistent)},
  };
}

inline double need_double(std::string_view key, std::string_view v) {
  if (auto d = parse_double(v)) return *d;
  throw UsageError("report field '" + std::string(key) + "': bad number '" + std::string(v) + "'");
}

inline std::optional<double> need_opt(std::string_view key, std::string_view v, std::string_view empty) {
  if (v == empty) return std::nullopt;
  return need_double(key, v);
}

inline bool need_bool(std::string_view key, std::string_view v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw UsageError("report field '" + std::string(key) + "': expected true or false");
}

inline long long need_int(std::string_view key, std::string_view v) {
  if (auto i = parse_integer(v)) return *i;
  throw UsageError("report field '" + std::string(key) + "': bad integer '" + std::string(v) + "'");
}

/// Fills `r` from one field; unknown keys are rejected.
inline void set_report_field(ConditionReport& r, const std::string& key, const std::string& v) {
  if (key == "check") r.check = parse_check_kind(v);
  else if (key == "q") r.q = v;
  else if (key == "qt") r.qt = v;
  else if (key == "bc") r.bc = v;
  else if (key == "n") r.n = static_cast<int>(need_int(key, v));
  else if (key == "index") r.index = static_cast<std::size_t>(need_int(key, v));
  else if (key == "backend") r.backend = v;
  else if (key == "lambda_n") r.lambda_n = need_double(key, v);
  else if (key == "lambda_ref") r.lambda_ref = need_double(key, v);
  else if (key == "delta") r.delta = need_double(key, v);
  else if (key == "inner_product_value") r.inner_product_value = need_double(key, v);
  else if (key == "ess_inf_qhat") r.ess_inf_qhat = need_opt(key, v, "unbounded");
  else if (key == "ess_sup_qhat") r.ess_sup_qhat = need_opt(key, v, "unbounded");
  else if (key == "residual_inner") r.residual_inner = need_double(key, v);
  else if (key == "residual_extremal") r.residual_extremal = need_opt(key, v, "none");
  else if (key == "extremal_branch") r.extremal_branch = v;
  else if (key == "proof_identity_residual") r.proof_identity_residual = need_double(key, v);
  else if (key == "conclusion_l1_residual") r.conclusion_l1_residual = need_double(key, v);
  else if (key == "conclusion_linf_residual") r.conclusion_linf_residual = need_opt(key, v, "none");
  else if (key == "mean_residual") r.mean_residual = need_opt(key, v, "none");
  else if (key == "normalized_conclusion_l1") r.normalized_conclusion_l1 = need_opt(key, v, "none");
  else if (key == "degenerate") r.degenerate = need_bool(key, v);
  else if (key == "eigenspace_dim") r.eigenspace_dim = static_cast<std::size_t>(need_int(key, v));
  else if (key == "tol_condition") r.tolerances.condition = need_double(key, v);
  else if (key == "tol_solver") r.tolerances.solver = need_double(key, v);
  else if (key == "verdict_inner") r.verdict_inner = parse_verdict(v);
  else if (key == "verdict_extremal") r.verdict_extremal = parse_verdict(v);
  else if (key == "verdict_mean") r.verdict_mean = parse_verdict(v);
  else if (key == "verdict_conclusion") r.verdict_conclusion = parse_verdict(v);
  else if (key == "verdict_normalized_conclusion") r.verdict_normalized_conclusion = parse_verdict(v);
  else if (key == "hypotheses_hold") r.hypotheses_hold = need_bool(key, v);
  else if (key == "consistent") r.consistent = need_bool(key, v);
  else throw UsageError("unknown report field '" + key + "'");
}

}  // namespace detail

/// One key=value line per field; reports are separated by a blank line.
inline std::string format_reports_text(const std::vector<ConditionReport>& reports) {
  std::string out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i > 0) out += "\n";
    for (const auto& [k, v] : detail::report_fields(reports[i])) out += k + "=" + v + "\n";
  }
  return out;
}

inline std::string format_report_text(const ConditionReport& r) { return format_reports_text({r}); }

inline std::vector<ConditionReport> parse_reports_text(std::string_view text, const std::string& source = "<report>") {
  std::vector<ConditionReport> out;
  bool open = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    const auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (trim(line).empty()) {
      open = false;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, 1, "expected key=value");
    const std::string key(line.substr(0, eq));
    const std::string value(line.substr(eq + 1));
    if (!open) {
      if (key != "check") throw ParseError(source, line_no, 1, "a report block must start with check=");
      out.emplace_back();
      open = true;
    }
    try {
      detail::set_report_field(out.back(), key, value);
    } catch (const UsageError& e) {
      throw ParseError(source, line_no, static_cast<int>(eq) + 2, e.what());
    }
  }
  return out;
}

inline ConditionReport parse_report_text(std::string_view text) {
  auto all = parse_reports_text(text);
  if (all.size() != 1) throw UsageError("expected exactly one report, found " + std::to_string(all.size()));
  return all.front();
}

namespace detail {

inline std::string json_string(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

inline bool numeric_field(std::string_view key) {
  static const std::vector<std::string_view> keys{"n", "index", "lambda_n", "lambda_ref", "delta",
                                                  "inner_product_value", "ess_inf_qhat", "ess_sup_qhat",
                                                  "residual_inner", "residual_extremal",
                                                  "proof_identity_residual", "conclusion_l1_residual",
                                                  "conclusion_linf_residual", "mean_residual",
                                                  "normalized_conclusion_l1", "eigenspace_dim",
                                                  "tol_condition", "tol_solver"};
  for (auto k : keys) {
    if (k == key) return true;
  }
  return false;
}

}  // namespace detail

/// JSON array of report objects. Numbers are written with 17 significant
/// digits; absent optionals are null, unbounded essential bounds the string "unbounded".
inline std::string format_reports_json(const std::vector<ConditionReport>& reports) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out += "  {\n";
    const auto fields = detail::report_fields(reports[i]);
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const auto& [k, v] = fields[f];
      std::string value;
      if (v == "true" || v == "false") {
        value = v;
      } else if (detail::numeric_field(k)) {
        value = v == "none" ? "null" : (v == "unbounded" ? "\"unbounded\"" : v);
      } else {
        value = detail::json_string(v);
      }
      out += "    " + detail::json_string(k) + ": " + value + (f + 1 < fields.size() ? ",\n" : "\n");
    }
    out += i + 1 < reports.size() ? "  },\n" : "  }\n";
  }
  out += "]\n";
  return out;
}

inline std::vector<ConditionReport> parse_reports_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("report JSON: ") + e.what());
  }
  if (!doc.is_array()) throw UsageError("report JSON: expected an array");
  std::vector<ConditionReport> out;
  for (const auto& obj : doc) {
    if (!obj.is_object()) throw UsageError("report JSON: expected objects");
    ConditionReport r;
    for (const auto& [key, val] : obj.items()) {
      std::string text_value;
      if (val.is_null()) {
        text_value = "none";
      } else if (val.is_boolean()) {
        text_value = val.get<bool>() ? "true" : "false";
      } else if (val.is_string()) {
        text_value = val.get<std::string>();
      } else if (val.is_number_integer()) {
        text_value = std::to_string(val.get<long long>());
      } else if (val.is_number()) {
        text_value = format_double(val.get<double>());
      } else {
        throw UsageError("report JSON: unexpected value for '" + key + "'");
      }
      detail::set_report_field(r, key, text_value);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sltk

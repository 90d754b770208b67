#pragma once

// Potential files. Grammar (one "key = value" per line, '#' comments):
//
//   kind = piecewise            kind = sampled           kind = analytic
//   breakpoints = 0, 0.5, 1     values = v0, v1, ...     tag = zero | constant | cos2pi | sin2pi | custom-table
//   values = 1, 3                                        value = c               (constant)
//                                                        k = 1, amplitude = 1    (cos2pi, sin2pi)
//                                                        constant = c0, cos = a1, a2, ..., sin = b1, ...
//                                                                                (custom-table)
//
// Lists are comma separated decimal literals.

#include <set>
#include <string>
#include <string_view>

#include "sltk/errors.hpp"
#include "sltk/kv.hpp"
#include "sltk/potential/potential.hpp"

namespace sltk {

namespace detail {

inline void reject_unknown_keys(const KvDocument& doc, const std::set<std::string>& allowed) {
  for (const auto& e : doc.entries()) {
    if (!allowed.count(e.key)) {
      throw ParseError(doc.source(), e.line, 1, "unknown key '" + e.key + "'");
    }
  }
}

template <class Build>
Potential build_checked(const KvDocument& doc, const KvEntry& at, Build&& build) {
  try {
    return build();
  } catch (const UsageError& err) {
    doc.fail(at, err.what());
  }
}

}  // namespace detail

inline Potential potential_from_document(const KvDocument& doc) {
  const auto& kind = doc.require("kind");
  if (kind.value == "piecewise") {
    detail::reject_unknown_keys(doc, {"kind", "breakpoints", "values"});
    const auto& bps = doc.require("breakpoints");
    const auto& vals = doc.require("values");
    return detail::build_checked(doc, bps, [&] { return Potential::piecewise(doc.numbers(bps), doc.numbers(vals)); });
  }
  if (kind.value == "sampled") {
    detail::reject_unknown_keys(doc, {"kind", "values"});
    const auto& vals = doc.require("values");
    return detail::build_checked(doc, vals, [&] { return Potential::sampled(doc.numbers(vals)); });
  }
  if (kind.value == "analytic") {
    const auto& tag = doc.require("tag");
    if (tag.value == "zero") {
      detail::reject_unknown_keys(doc, {"kind", "tag"});
      return Potential::zero();
    }
    if (tag.value == "constant") {
      detail::reject_unknown_keys(doc, {"kind", "tag", "value"});
      const auto& v = doc.require("value");
      return detail::build_checked(doc, v, [&] { return Potential::constant(doc.number(v)); });
    }
    if (tag.value == "cos2pi" || tag.value == "sin2pi") {
      detail::reject_unknown_keys(doc, {"kind", "tag", "k", "amplitude"});
      const auto* k = doc.find("k");
      const auto* amp = doc.find("amplitude");
      const long long kv = k ? doc.integer(*k) : 1;
      if (kv < 1 || kv > 1000) doc.fail(*k, "k must be in [1, 1000]");
      const double av = amp ? doc.number(*amp) : 1.0;
      return detail::build_checked(doc, tag, [&] {
        return tag.value == "cos2pi" ? Potential::cos2pi(static_cast<int>(kv), av)
                                     : Potential::sin2pi(static_cast<int>(kv), av);
      });
    }
    if (tag.value == "custom-table") {
      detail::reject_unknown_keys(doc, {"kind", "tag", "constant", "cos", "sin"});
      const auto* c0 = doc.find("constant");
      const auto* cs = doc.find("cos");
      const auto* sn = doc.find("sin");
      return detail::build_checked(doc, tag, [&] {
        return Potential::custom_table(c0 ? doc.number(*c0) : 0.0, cs ? doc.numbers(*cs) : std::vector<double>{},
                                       sn ? doc.numbers(*sn) : std::vector<double>{});
      });
    }
    doc.fail(tag, "unknown analytic tag '" + tag.value + "'");
  }
  doc.fail(kind, "unknown potential kind '" + kind.value + "' (expected piecewise, sampled or analytic)");
}

inline Potential parse_potential(std::string_view text, std::string source = "<potential>") {
  return potential_from_document(KvDocument::parse(text, std::move(source)));
}

inline Potential load_potential(const std::string& path) { return potential_from_document(KvDocument::load(path)); }

/// Inverse of parse_potential; numbers use 17 significant digits.
inline std::string format_potential(const Potential& q) {
  std::string out;
  if (const auto* p = q.as_piecewise()) {
    out += "kind = piecewise\n";
    out += "breakpoints = " + join_doubles(p->breakpoints, ", ") + "\n";
    out += "values = " + join_doubles(p->values, ", ") + "\n";
    return out;
  }
  if (const auto* s = q.as_sampled()) {
    out += "kind = sampled\n";
    out += "values = " + join_doubles(s->values, ", ") + "\n";
    return out;
  }
  const auto& a = *q.as_analytic();
  out += "kind = analytic\n";
  out += "tag = custom-table\n";
  out += "constant = " + format_double(a.constant) + "\n";
  if (!a.cos_coeffs.empty()) out += "cos = " + join_doubles(a.cos_coeffs, ", ") + "\n";
  if (!a.sin_coeffs.empty()) out += "sin = " + join_doubles(a.sin_coeffs, ", ") + "\n";
  return out;
}

}  // namespace sltk

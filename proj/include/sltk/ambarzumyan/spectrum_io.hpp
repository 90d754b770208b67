#pragma once

// SpectralData in the key=value report format: a header block naming the
// problem, then one block per eigenpair. Samples are comma separated with
// 17 significant digits.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sltk/decimal.hpp"
#include "sltk/errors.hpp"
#include "sltk/solver/solver.hpp"

namespace sltk {

/// Parsed form of a serialized spectrum; the problem is kept as its description.
struct SpectrumRecord {
  std::string q;
  std::string bc;
  std::vector<EigenPair> pairs;
};

inline std::string format_spectrum_text(const SpectralData& data) {
  std::string out = "problem=spectrum\nq=" + data.q.describe() + "\nbc=" + data.bc.name() +
                    "\npair_count=" + std::to_string(data.pairs.size()) + "\n";
  for (const auto& p : data.pairs) {
    out += "\nindex=" + std::to_string(p.index) + "\neigenvalue=" + format_double(p.eigenvalue) +
           "\nnode_count=" + std::to_string(p.node_count) + "\nbackend=" + backend_name(p.backend) +
           "\neigenfunction=" + join_doubles(p.eigenfunction) + "\n";
  }
  return out;
}

inline SpectrumRecord parse_spectrum_text(std::string_view text, const std::string& source = "<spectrum>") {
  SpectrumRecord rec;
  std::size_t expected = 0;
  bool header = true;
  int line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](int col, const std::string& what) { throw ParseError(source, line_no, col, what); };
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    const auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (trim(line).empty()) {
      header = false;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(1, "expected key=value");
    const std::string key(line.substr(0, eq));
    const std::string_view value = line.substr(eq + 1);
    const int col = static_cast<int>(eq) + 2;
    auto number = [&] {
      if (auto d = parse_double(value)) return *d;
      fail(col, "bad number for '" + key + "'");
      return 0.0;
    };
    auto count = [&] {
      const auto i = parse_integer(value);
      if (!i || *i < 0) fail(col, "bad count for '" + key + "'");
      return static_cast<std::size_t>(*i);
    };
    if (header) {
      if (key == "problem") {
        if (value != "spectrum") fail(col, "expected problem=spectrum");
      } else if (key == "q") {
        rec.q = value;
      } else if (key == "bc") {
        rec.bc = value;
      } else if (key == "pair_count") {
        expected = count();
      } else {
        fail(1, "unknown header field '" + key + "'");
      }
      continue;
    }
    if (key == "index") {
      rec.pairs.emplace_back();
      rec.pairs.back().index = count();
      continue;
    }
    if (rec.pairs.empty()) fail(1, "a pair block must start with index=");
    auto& p = rec.pairs.back();
    if (key == "eigenvalue") {
      p.eigenvalue = number();
    } else if (key == "node_count") {
      p.node_count = count();
    } else if (key == "backend") {
      try {
        p.backend = parse_backend(value);
      } catch (const UsageError& e) {
        fail(col, e.what());
      }
    } else if (key == "eigenfunction") {
      std::size_t start = 0;
      while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const auto item = value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        const auto d = parse_double(item);
        if (!d) fail(col + static_cast<int>(start), "bad sample '" + std::string(item) + "'");
        p.eigenfunction.push_back(*d);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    } else {
      fail(1, "unknown pair field '" + key + "'");
    }
  }
  if (rec.pairs.size() != expected) {
    throw ParseError(source, line_no, 1,
                     "pair_count=" + std::to_string(expected) + " but " + std::to_string(rec.pairs.size()) + " pairs");
  }
  return rec;
}

}  // namespace sltk

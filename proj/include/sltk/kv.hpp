#pragma once

// Line-oriented "key = value" text used by potential files and run configs.
// '#' starts a comment; blank lines are ignored.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sltk/decimal.hpp"
#include "sltk/errors.hpp"

namespace sltk {

struct KvEntry {
  std::string key;
  std::string value;
  int line = 0;
  int value_column = 0;  ///< 1-based column where the value starts
};

class KvDocument {
 public:
  static KvDocument parse(std::string_view text, std::string source) {
    KvDocument doc;
    doc.source_ = std::move(source);
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto eol = text.find('\n', pos);
      const std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
      ++line_no;
      pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

      std::string_view line = raw;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      if (trim(line).empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        const auto col = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
        throw ParseError(doc.source_, line_no, col, "expected 'key = value'");
      }
      const std::string_view key = trim(line.substr(0, eq));
      if (key.empty()) throw ParseError(doc.source_, line_no, 1, "empty key");
      const std::string_view rest = line.substr(eq + 1);
      const std::string_view value = trim(rest);
      const auto lead = rest.find_first_not_of(" \t");
      const int value_col = static_cast<int>(eq + 1 + (lead == std::string_view::npos ? 0 : lead)) + 1;
      for (const auto& e : doc.entries_) {
        if (e.key == key) {
          throw ParseError(doc.source_, line_no, static_cast<int>(raw.find(key)) + 1,
                           "duplicate key '" + std::string(key) + "'");
        }
      }
      doc.entries_.push_back(KvEntry{std::string(key), std::string(value), line_no, value_col});
    }
    return doc;
  }

  static KvDocument load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
  }

  const std::string& source() const noexcept { return source_; }
  const std::vector<KvEntry>& entries() const noexcept { return entries_; }

  const KvEntry* find(std::string_view key) const {
    for (const auto& e : entries_) {
      if (e.key == key) return &e;
    }
    return nullptr;
  }

  const KvEntry& require(std::string_view key) const {
    if (const auto* e = find(key)) return *e;
    throw ParseError(source_, 0, 0, "missing required key '" + std::string(key) + "'");
  }

  [[noreturn]] void fail(const KvEntry& e, const std::string& what) const {
    throw ParseError(source_, e.line, e.value_column, what);
  }

  double number(const KvEntry& e) const {
    if (auto v = parse_double(e.value)) return *v;
    fail(e, "expected a decimal number for '" + e.key + "', got '" + e.value + "'");
  }

  long long integer(const KvEntry& e) const {
    if (auto v = parse_integer(e.value)) return *v;
    fail(e, "expected an integer for '" + e.key + "', got '" + e.value + "'");
  }

  /// Comma-separated decimal list; an empty value gives an empty list.
  std::vector<double> numbers(const KvEntry& e) const {
    std::vector<double> out;
    std::string_view rest = e.value;
    if (trim(rest).empty()) return out;
    std::size_t offset = 0;
    while (true) {
      const auto comma = rest.find(',', offset);
      const std::string_view item = rest.substr(offset, comma == std::string_view::npos ? std::string_view::npos : comma - offset);
      const auto v = parse_double(trim(item));
      if (!v) {
        throw ParseError(source_, e.line, e.value_column + static_cast<int>(offset),
                         "bad number '" + std::string(trim(item)) + "' in list '" + e.key + "'");
      }
      out.push_back(*v);
      if (comma == std::string_view::npos) break;
      offset = comma + 1;
    }
    return out;
  }

 private:
  std::string source_;
  std::vector<KvEntry> entries_;
};

}  // namespace sltk

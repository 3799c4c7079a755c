#pragma once

// Locale-independent number formatting and a minimal CSV writer.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace vilenkin::io {

/// Shortest representation that round-trips; "nan", "inf", "-inf" otherwise.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline std::string format_uint(std::uint64_t v) { return std::to_string(v); }

/// Values joined by `sep`, e.g. "4;5;8" for a list inside one CSV cell.
inline std::string join_uints(const std::vector<std::uint64_t>& v, char sep = ';') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

/// Rows of already formatted cells; fields containing ',', '"' or a newline are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      write_cell(cells[i]);
    }
    out_ << '\n';
  }

 private:
  void write_cell(const std::string& c) {
    if (c.find_first_of(",\"\n") == std::string::npos) {
      out_ << c;
      return;
    }
    out_ << '"';
    for (char ch : c) {
      if (ch == '"') out_ << '"';
      out_ << ch;
    }
    out_ << '"';
  }

  std::ostream& out_;
};

}  // namespace vilenkin::io

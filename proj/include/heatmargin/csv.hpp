/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "heatmargin/errors.hpp"

namespace heatmargin {

// Shortest decimal string that round-trips the exact double value.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Line-oriented reader for the comma-separated schemas used here: mandatory
// header row, no quoting, '.' decimal separator. CRLF endings are accepted.
class CsvReader {
 public:
  CsvReader(const std::filesystem::path& path,
            const std::vector<std::string>& expected_header)
      : path_(path.string()), in_(path) {
    if (!in_) {
      throw ParseError(path_ + ": cannot open file");
    }
    std::string header;
    if (!std::getline(in_, header)) {
      throw ParseError(path_ + ": missing header row");
    }
    line_ = 1;
    strip_cr(header);
    std::string expected;
    for (std::size_t i = 0; i < expected_header.size(); ++i) {
      if (i > 0) expected += ',';
      expected += expected_header[i];
    }
    if (header != expected) {
      throw ParseError(path_ + ":1: header must be '" + expected + "', got '" +
                       header + "'");
    }
    columns_ = expected_header;
  }

  // Reads the next data row into fields; false at end of file. Blank
  // trailing lines are ignored; a wrong field count throws.
  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      strip_cr(line);
      if (line.empty()) continue;
      fields.clear();
      std::size_t start = 0;
      while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
          fields.push_back(line.substr(start));
          break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
      }
      if (fields.size() != columns_.size()) {
        throw ParseError(where() + ": expected " +
                         std::to_string(columns_.size()) + " fields, got " +
                         std::to_string(fields.size()));
      }
      return true;
    }
    return false;
  }

  std::string where() const { return path_ + ":" + std::to_string(line_); }

  // Context string "file:line: column" for error messages.
  std::string where(std::size_t column_index) const {
    return where() + ": " + columns_[column_index];
  }

  double parse_double(const std::vector<std::string>& fields,
                      std::size_t column_index) const {
    const std::string& s = fields[column_index];
    double v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw ParseError(where(column_index) + ": not a number: '" + s + "'");
    }
    return v;
  }

 private:
  static void strip_cr(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  }

  std::string path_;
  std::ifstream in_;
  std::vector<std::string> columns_;
  std::size_t line_{0};
};

// Writes a header plus pre-rendered rows; one trailing newline per row.
inline void write_csv(const std::filesystem::path& path,
                      const std::string& header,
                      const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError(path.string() + ": cannot open for writing");
  }
  out << header << '\n';
  for (const auto& r : rows) out << r << '\n';
  if (!out) {
    throw ParseError(path.string() + ": write failed");
  }
}

}  // namespace heatmargin

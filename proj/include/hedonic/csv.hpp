#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hedonic {

/// Minimal CSV reading: comma-separated, optional double-quoted fields
/// (embedded commas and doubled quotes supported, no multi-line fields).
/// Keeps 1-based line numbers for error reporting.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// Reads the next non-empty line into `fields`. Returns false at EOF.
  bool next(std::vector<std::string>& fields);

  std::size_t line_number() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::vector<std::string> split_csv_line(const std::string& line);

/// Quotes a field only when it contains a comma, quote, or leading/trailing
/// whitespace.
std::string csv_field(const std::string& value);

std::string join_csv(const std::vector<std::string>& fields);

}  // namespace hedonic

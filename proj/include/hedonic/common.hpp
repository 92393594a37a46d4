#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hedonic {

/// Invalid values or parameters handed to an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structural problems in an input file: missing columns, field layout
/// violations, model/table mismatches.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unparseable or internally inconsistent file content.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal form that parses back to the identical double. All
/// writers go through this so persisted artifacts are byte-stable.
std::string format_double(double v);

/// Parses a double, requiring the whole field to be consumed.
bool parse_double(std::string_view field, double& out);

/// FNV-1a 64-bit over a byte string.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ull);

}  // namespace hedonic

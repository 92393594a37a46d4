#include "hedonic/common.hpp"

#include <charconv>
#include <cstdlib>

namespace hedonic {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool parse_double(std::string_view field, double& out) {
  // from_chars does not skip whitespace; trim both ends first.
  std::size_t b = field.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return false;
  std::size_t e = field.find_last_not_of(" \t\r");
  field = field.substr(b, e - b + 1);
  auto res = std::from_chars(field.data(), field.data() + field.size(), out);
  return res.ec == std::errc() && res.ptr == field.data() + field.size();
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace hedonic

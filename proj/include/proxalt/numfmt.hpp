#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <system_error>

namespace proxalt {

/// Shortest decimal text that parses back to exactly `v`. Non-finite values
/// print as nan, inf and -inf.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

/// Inverse of format_double. Returns false on malformed text.
inline bool parse_double(std::string_view text, double& out) {
  if (text == "nan") {
    out = std::nan("");
    return true;
  }
  if (text == "inf") {
    out = HUGE_VAL;
    return true;
  }
  if (text == "-inf") {
    out = -HUGE_VAL;
    return true;
  }
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace proxalt

#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace fracgrid {

/// Shortest decimal text that parses back to exactly `value`.
inline std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (result.ec != std::errc{}) return std::to_string(value);
  return {buffer, result.ptr};
}

}  // namespace fracgrid

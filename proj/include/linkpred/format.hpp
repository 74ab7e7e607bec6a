#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

#include "linkpred/graph.hpp"

namespace linkpred {

/// Shortest round-trip decimal form, independent of the global locale.
inline std::string format_real(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

/// Locale-independent parse of a full string as a real number.
inline double parse_real(std::string_view s) {
  double x = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size())
    throw ParameterError("not a number: '" + std::string(s) + "'");
  return x;
}

}  // namespace linkpred

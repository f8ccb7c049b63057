#pragma once

#include <charconv>
#include <string>

namespace kura {

/// Shortest round-trip decimal form of x; deterministic across platforms, so
/// identical runs produce byte-identical CSV/JSON/DOT output.
inline std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace kura

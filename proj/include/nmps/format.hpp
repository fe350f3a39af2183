#pragma once

#include <cstdio>
#include <string>

namespace nmps {

/// Shortest-safe round-trip text for a double ("%.17g"); "inf" for +inf.
inline std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace nmps

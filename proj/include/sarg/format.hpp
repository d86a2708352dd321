#pragma once

#include <cstdio>
#include <string>

namespace sarg {

/// Decimal with 12 significant digits, as used by every report.
inline std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace sarg

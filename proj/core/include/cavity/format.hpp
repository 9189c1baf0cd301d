#pragma once

#include <cstdio>
#include <string>

namespace cavity {

/// Fixed 12-significant-digit rendering used for every CSV value, so equal
/// inputs always produce byte-identical files.
inline std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace cavity

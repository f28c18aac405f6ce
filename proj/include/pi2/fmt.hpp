// Fixed 17-significant-digit decimal formatting. 17 digits round-trip any
// double exactly, and a fixed precision keeps serialized output
// byte-identical across runs and thread counts.
#pragma once

#include <charconv>
#include <string>

namespace pi2 {

inline std::string fmt17(double v) {
  char buf[40];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace pi2

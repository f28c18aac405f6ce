#include "pi2/diag.hpp"

#include <cstdio>
#include <cstdlib>

namespace pi2 {

int log_verbosity() {
  static const int level = [] {
    const char* env = std::getenv("PI2_LOG");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || v < 0) return 0;
    return static_cast<int>(v > 1000 ? 1000 : v);
  }();
  return level;
}

void log_line(int level, const std::string& msg) {
  if (level > log_verbosity()) return;
  std::string line;
  line.reserve(msg.size() + 8);
  line += "[pi2] ";
  line += msg;
  line += '\n';
  std::fwrite(line.data(), 1, line.size(), stderr);
}

}  // namespace pi2

// Optional stderr diagnostics, gated by the PI2_LOG environment variable.
//
// PI2_LOG unset, empty, or non-numeric means silent (level 0). PI2_LOG=1
// enables per-run summaries, PI2_LOG=2 adds per-point progress. Messages go
// to stderr only, so data written to stdout or to output files stays
// byte-identical whatever the verbosity.
#pragma once

#include <string>

namespace pi2 {

// Verbosity parsed from PI2_LOG once per process (clamped to >= 0).
int log_verbosity();

// Write "[pi2] <msg>\n" to stderr when level <= log_verbosity(). Each call
// makes a single write, so lines from concurrent workers do not interleave.
void log_line(int level, const std::string& msg);

}  // namespace pi2

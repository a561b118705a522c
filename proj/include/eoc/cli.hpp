#pragma once

#include <string>
#include <vector>

#include "eoc/criterion.hpp"

namespace eoc {

/// Scheme-aware large-N critical-gain prediction (zero / gaussian / chrono).
CriticalGainPrediction gc_asymptotic(Arch arch, const BiasScheme& scheme);

/// Parses argv and dispatches to the requested experiment. Returns the process
/// exit status (0 iff no module error propagated); diagnostics go to stderr as
/// a single line.
int run_cli(int argc, const char* const* argv);

/// Test-friendly overload; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace eoc

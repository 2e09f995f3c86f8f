#pragma once

#include <ostream>

namespace seqgamma {

// Parse and execute one command-line invocation. Success output goes to `out`,
// diagnostics (single line per error) to `err`. Returns the process exit code:
//   0 success (including an analysis that ran out of data, reported as such)
//   2 flag or configuration problems
//   3 at least one simulated run was stopped by the safety cap
//   4 file, parse, or data problems
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace seqgamma

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cohtomo {

/// Runs the command-line tool on `args` (excluding the program name),
/// writing regular output to `out` and diagnostics to `err`.  Returns the
/// process exit code: 0 on success, 2 on input errors (bad flags, malformed
/// documents, plan mismatches), 3 on numerical failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cohtomo

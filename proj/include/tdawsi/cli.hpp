#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tdawsi {

/// Runs the command line `args` (without the program name). Diagnostics go to
/// `err`; results go to `out` unless an output path is given.
/// Returns 0 on success, otherwise the ErrorKind value of the failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdawsi

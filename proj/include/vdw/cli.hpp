#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vdw::cli {

/// 0 success or valid, 1 domain-level negative (invalid certificate, false
/// verdict, registry conflict), 2 usage or parse error, 3 search budget
/// exhausted.
enum ExitCode : int { ok = 0, negative = 1, usage = 2, budget = 3 };

/// Runs one command line (args[0] is the program name). Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vdw::cli

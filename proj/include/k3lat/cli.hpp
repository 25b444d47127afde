#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace k3lat::cli {

enum ExitCode : int { kYes = 0, kNo = 1, kUnknown = 2, kInputError = 3 };

/// Runs one command. args excludes the program name. Reports go to out,
/// diagnostics to err; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace k3lat::cli

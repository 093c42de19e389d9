#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cptk {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitPrecondition = 3,
    kExitInconclusive = 4,
    kExitViolation = 5,
};

/// Runs one command; args excludes the program name. Reports go to `out`
/// (or --out), human summaries and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cptk

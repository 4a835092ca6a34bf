#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace interf::cli {

inline constexpr const char* kReportSchema = "report-v1";

enum ExitCode : int { kOk = 0, kUsageError = 2, kDomainError = 3 };

/// Runs one CLI invocation. `args` excludes the program name. Reports go to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace interf::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace metrik::cli {

inline constexpr const char* kReportSchema = "metrik.report/1";

/// Runs one command line (without the program name). The JSON report goes to
/// `out` (or to --output), diagnostics to `err`. Returns the exit code:
/// 0 pass/success, 1 violation or negative outcome, 2 error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metrik::cli

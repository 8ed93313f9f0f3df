#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctxprob::cli {

inline constexpr const char* kReportSchema = "ctxprob.report/1";

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Returns the process exit code: 0 on success, 1 on a
/// runtime error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctxprob::cli

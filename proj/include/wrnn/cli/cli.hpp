#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wrnn::cli {

/// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitDivergence = 4;

/// Runs one verb. args excludes the program name. Failures print a single
/// "error:<category>:<Code>: message" line on err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Version string recorded in run manifests.
const char* version();

}  // namespace wrnn::cli

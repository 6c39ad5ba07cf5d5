#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace ulam::tools {

enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3, kBudget = 4 };

/// Entry point of the `ulam` tool. `args` excludes the program name; `in`
/// serves pipe mode (`-` as the input path).
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ulam::tools

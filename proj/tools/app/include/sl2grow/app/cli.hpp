#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sl2grow::app {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs one command line (without the program name). Results go to `out`,
/// logs and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sl2grow::app

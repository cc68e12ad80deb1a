#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace smap::cli {

/// Exit codes of cli_main.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kAborted = 3,
};

/// Entry point of smap-lab. `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smap::cli

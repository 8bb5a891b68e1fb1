#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace abc {

/// Exit codes of the `abc` tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFails = 1,
  kExitInvalid = 2,  // parse/validation error or bad usage
  kExitUnknown = 3,  // a resource limit left a verdict undecided
  kExitEvalError = 4,
};

/// Runs the command line `args` (args[0] is the program name).
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace abc

#pragma once

#include <string>
#include <vector>

namespace arclift {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitCertificate = 2,
  kExitNotFound = 3,
  kExitParse = 4,
};

struct CliResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Runs `arclift <command> <problem.json> [flags]` with args excluding the
/// program name.  Never throws; all output is returned.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace arclift

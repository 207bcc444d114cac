#pragma once

#include <iosfwd>
#include <vector>

#include "nlwave/run_config.hpp"

namespace nlwave::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kRuntimeError = 2,
  kBlowupDetected = 3,
  kCheckViolation = 4,
};

/// Runs the command described by a resolved config, writing any requested
/// artifacts and a human-readable summary to `out`. Returns the exit code;
/// throws on runtime failures (I/O, diverged studies).
int execute(const RunConfig& config, std::ostream& out);

/// Full CLI entry point: parses args, executes, maps errors to exit codes.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlwave::cli

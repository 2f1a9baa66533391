#pragma once

#include <string>
#include <vector>

#include "gslab/cli/config.hpp"

namespace gslab::cli {

enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitNumeric = 3 };

struct RunResult {
  int exit_code = kExitOk;
  std::string message;
  std::vector<std::string> files;  // written artifacts, in write order
};

// Validates, computes, then writes every artifact. Never throws; failures are
// mapped to exit codes with the error text in `message`.
RunResult run(const RunConfig& config);

// Worker cap from GSLAB_THREADS (0 when unset or invalid: hardware default).
unsigned thread_cap();

// Command-line front end: positional command, parameter and numeric flags,
// optional --config JSON file (flags win). Writes run.log next to the
// reports. Returns the process exit status.
int main_entry(int argc, char** argv);

}  // namespace gslab::cli

#pragma once

#include <string>
#include <vector>

#include "nodal/experiment.hpp"

namespace nodal::cli {

/// Result of parsing a command line: either a config to run, or text to print and an
/// exit code (help, usage errors).
struct ParsedArgs {
  ExperimentConfig config;
  bool should_run = false;
  int exit_code = 0;
  std::string message;
};

/// Parses `nodal_lab <command> [flags]`. `threads_env` is the value of NODAL_LAB_THREADS
/// (empty if unset) and is used only when --threads is absent.
ParsedArgs parse_args(const std::vector<std::string>& argv, const std::string& threads_env = {});

}  // namespace nodal::cli

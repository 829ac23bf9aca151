#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cli_config.hpp"

namespace chebbern::cli {

/// Exit codes of the command-line tool.
enum ExitCode {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kNonexistence = 3,
  kNotEct = 4,
  kInterlacingViolation = 5,
};

struct Options {
  Config config;
  std::string out_path;
  std::string basis_out_path;  // optional: raw-basis coefficient rows
  unsigned seed = 0;
  int grid = 257;
};

void cmd_build(const Options& options);
void cmd_chain(const Options& options);
void cmd_shape(const Options& options);
void cmd_trig_scan(double bmin, double bmax, int count, const std::string& out_path);

/// Full argument-vector entry point (without the program name); errors are
/// reported on `err` and turned into the exit codes above.
int run_cli(const std::vector<std::string>& args, std::ostream& err);

}  // namespace chebbern::cli

#pragma once

#include <filesystem>
#include <iosfwd>

#include "kglab/config.hpp"

namespace kg {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitVerification = 2,
  kExitInstability = 3,
};

struct CliOptions {
  std::filesystem::path out_dir = ".";
  bool quiet = false;
  double perturb_vs = 0.0;  // fault injection into the residual operator
};

/// Each command writes its files under `out_dir` and a short summary to `log`
/// (suppressed by `quiet`), and returns an ExitCode.
int cmd_exact(const RunConfig& cfg, const CliOptions& opt, std::ostream& log);
int cmd_simulate(const RunConfig& cfg, const CliOptions& opt, std::ostream& log);
int cmd_verify(const RunConfig& cfg, const CliOptions& opt, std::ostream& log);
int cmd_convergence(const RunConfig& cfg, const CliOptions& opt, std::ostream& log);

/// Parses argv, loads the config, dispatches, and maps errors to exit codes.
int run_cli(int argc, char** argv);

}  // namespace kg

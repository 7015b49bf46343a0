// Scenario runner behind the command-line tool: one evolve per k in k_list,
// a CSV time series per run and a JSON summary for the sweep.
#pragma once

#include <string>
#include <vector>

#include "stratshear/config.hpp"

namespace stratshear {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitSolver = 3, kExitAssertion = 4 };

struct RunOptions {
  std::string output_dir;  // resolved directory (see resolve_output_dir)
  bool assert_acceptance = false;
  int jobs = 1;
};

struct Assertion {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::string summary_path;
  std::vector<std::string> messages;  // diagnostics for stderr
};

/// --out beats STRATSHEAR_OUTPUT_DIR, which beats output.dir in the config.
std::string resolve_output_dir(const RunConfig& config, const std::string& cli_out);

/// Ratio bound Gamma = exp(4 pi (1 + beta)^2 / (2 sqrt R - 1)) for the
/// per-eta Couette energy.
double couette_energy_bound(double R, double beta);

/// Runs the sweep and writes `run_k<k>.csv` files and `summary.json`.
/// Config must already be validated.
RunOutcome run(const RunConfig& config, const RunOptions& options);

/// File name of the time series for wavenumber k.
std::string csv_name(int k);

}  // namespace stratshear

#pragma once

#include <string>

#include <mbeam/error.hpp>

#include "config.hpp"

namespace mbeam::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kHypothesisError = 3,
  kDivergence = 4,
  kNumericError = 5,
};

int exit_code_for(ErrorKind kind) noexcept;

/// Each command writes its CSV files under config.out and a short summary to
/// stdout, and returns an ExitCode. Library errors propagate as exceptions.
int cmd_validate(const RunConfig& config);
int cmd_solve(const RunConfig& config);
int cmd_mms(const RunConfig& config);
int cmd_convergence(const RunConfig& config);
int cmd_theta_sweep(const RunConfig& config);
int cmd_energy(const RunConfig& config);

/// Dispatches by name ("validate", "solve", "mms", "convergence",
/// "theta-sweep", "energy") and maps exceptions to exit codes.
int run_command(const std::string& name, const RunConfig& config);

}  // namespace mbeam::cli

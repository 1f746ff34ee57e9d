#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "scenario.hpp"

namespace mbsim {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitSchema = 2,
  kExitInconsistent = 3,
  kExitIntegrationFailure = 4,
};

struct ConvergenceResult {
  std::vector<double> h;
  std::vector<double> error;
  double slope = 0.0;
  double r_squared = 0.0;
};

/// Global error of the final state for each h against a reference run at
/// min(h) / 10, with a least-squares fit of log(error) against log(h).
ConvergenceResult convergence_study(const Scenario& sc, const std::vector<double>& hs);

struct CompareResult {
  std::vector<std::string> runs;
  /// Largest |‖Q‖ - 1| over the run; for the baseline this is measured before
  /// renormalization. Zero for rotation-vector coordinates.
  std::vector<double> qnorm_err;
  /// Final-pose discrepancy between runs i and j, summed over bodies.
  std::vector<std::vector<double>> discrepancy;
};

/// Runs are combo ids or "baseline" (quaternion RK4 on the SE(3) model).
CompareResult compare_runs(const Scenario& sc, const std::vector<std::string>& runs);

/// Default run list: the eight combos and the baseline.
std::vector<std::string> default_compare_runs();

/// Command-line entry point. Returns one of the ExitCode values.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mbsim

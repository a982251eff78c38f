#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "invdyn/report.hpp"

namespace invdyn {

/// Closure, complement and labeling at one resolution.
struct ResolutionRun {
  int n = 0;
  InvariantJuliaResult closure;
  ComponentLabeling labeling;
};

ResolutionRun run_resolution(const RationalSemigroup& G, int n, double overlap, const EstimatorParams& params);

/// Output of the estimate-invariant pipeline.
struct InvariantAnalysis {
  RunReport report;
  /// The run at config.grid_n, used for images and per-component data.
  ResolutionRun main;
  bool converged = true;
  /// Set when the permutation check rejected the labeling.
  std::string permutation_error;
};

/// Runs invariant_julia at every trace resolution and at grid_n, classifies
/// the count trace, and fills a report (runtime left at 0).
InvariantAnalysis analyze_invariant(const JobConfig& config);

/// rh_deficiency of every generator.
std::vector<RhCheck> rh_checks(const std::vector<RationalMap>& generators);

/// One row of a verification table.
struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Built-in verification scenarios: example1, example2, single-quadratic,
/// rh-identities. `n` is the finest resolution (0 picks the default).
std::vector<Check> verify_scenario(const std::string& name, const EstimatorParams& params, int n = 0);

/// Command-line entry point; returns the process exit code.
/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace invdyn

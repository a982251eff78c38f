#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "invdyn/topology.hpp"

namespace invdyn {

/// One job as read from a JSON config file.
struct JobConfig {
  std::string scenario = "custom";
  std::vector<RationalMap> generators;
  int grid_n = 256;
  double overlap = 0.05;
  EstimatorParams estimator;
  /// Resolutions for the component-count trace; strictly increasing.
  std::vector<int> resolutions{256, 512};
  std::filesystem::path output_dir = ".";

  /// Throws UsageError (or a subclass) when the config breaks its invariants.
  void validate() const;
};

/// Parses and validates a config. Complex numbers are [re, im] pairs;
/// missing optional fields keep their defaults, unknown keys are rejected.
JobConfig parse_job_config(const nlohmann::json& j);
JobConfig load_job_config(const std::filesystem::path& path);
nlohmann::json to_json(const JobConfig& config);

struct RhCheck {
  int degree = 0;
  int deficiency = 0;
  friend bool operator==(const RhCheck&, const RhCheck&) = default;
};

/// Everything report.json carries.
struct RunReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::vector<int> resolutions;
  /// Significant W-component count per resolution.
  std::vector<int> counts;
  /// Absent when fewer than two resolutions were run.
  std::optional<ComponentClass> cls;
  std::vector<ComponentSummary> components;
  /// Generator index to image labels; only filled for class One or Two.
  std::map<std::size_t, std::vector<int>> permutations;
  std::vector<RhCheck> rh;
  /// Closure iterations per resolution (empty for Julia-only runs).
  std::vector<int> iterations;
  std::size_t min_component_pixels = kMinComponentPixels;
  double runtime_seconds = 0.0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

nlohmann::json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);

/// Binary PGM of a mask: chart 0 rows above chart 1 rows, 255 = set.
std::string mask_pgm(const SphereMask& mask);
/// Binary PGM of a labeling: label k drawn as floor(255 k / count).
std::string label_pgm(const ComponentLabeling& labeling);

/// Writes through a temporary file in the same directory and renames it into
/// place. Throws Error on I/O failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view data);

}  // namespace invdyn

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "dcflow/profiles.hpp"

namespace dcflow {

/// Run configuration. Defaults: rho0 = 3, T = 4, the inflection profile with
/// r1 = 0.7, r2 = 2, and the automatic time step.
struct RunConfig {
  double rho0 = 3.0;
  double t_final = 4.0;
  int n = 160;
  /// Empty means m = ceil(2T / du^2).
  std::optional<double> explicit_dt;
  ProfileSpec profile;
  int snapshots = 9;
  std::filesystem::path output_dir = ".";
  bool allow_unstable = false;
  std::optional<double> derivative_bound;
};

/// Parses a flat JSON object. Unknown keys, wrong types, and out-of-range
/// values throw std::invalid_argument. Relative paths are resolved against
/// `base_dir`.
RunConfig parse_run_config(const std::string& json_text,
                           const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// Spatial grid plus the time discretisation implied by the dt policy.
GridSpec make_grid(const RunConfig& config);

/// Requested snapshot times: `snapshots` equally spaced points in [0, T].
std::vector<double> snapshot_times(const RunConfig& config);

}  // namespace dcflow

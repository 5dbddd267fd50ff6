#pragma once

// Grid-refinement study on nested grids n_i = base_n * 2^i, with errors
// measured against the finest level by exact injection.

#include <optional>
#include <vector>

#include "dcflow/profiles.hpp"

namespace dcflow {

struct TimeStep {
  int m;
  double delta_t;
};

/// m = ceil(2T / du^2), delta_t = T / m, so that 2 delta_t <= du^2.
/// Throws std::overflow_error if m does not fit in an int.
TimeStep choose_time_step(double delta_u, double t_final);

/// rate_i = e_{i-1} - e_i for consecutive log2 errors (first entry has none).
std::vector<double> compute_rates(const std::vector<double>& log2_errors);

struct ConvergenceRow {
  int level = 0;
  int n = 0;
  double delta_u = 0.0;
  std::optional<double> log2_linf_error;  // absent on the reference row
  std::optional<double> rate;             // absent on the first row and the reference row
};

struct ConvergenceReport {
  ProfileSpec profile;
  double rho0 = 0.0;
  double t_final = 0.0;
  double eval_time = 0.0;
  int base_n = 0;
  int levels = 0;
  int reference_level = 0;
  std::vector<ConvergenceRow> rows;
};

struct StudyOptions {
  /// Run levels on separate threads; the report does not depend on this.
  bool parallel = true;
  /// Skip the cfl/domain/gradient checks.
  bool allow_unstable = false;
};

ConvergenceReport refinement_study(const ProfileSpec& profile, double rho0, double t_final,
                                   int base_n, int levels, double eval_time,
                                   const StudyOptions& options = {});

}  // namespace dcflow

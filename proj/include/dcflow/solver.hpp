#pragma once

// Explicit scheme for h_t = (h_uu + h_u / L[h]) / (1 + h_u^2) on [0, rho0]
// with h_u(0) = 0 and h(rho0) = 0, plus its stability hypotheses.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcflow/diagnostics.hpp"
#include "dcflow/mesh_ops.hpp"

namespace dcflow {


/// Current time level j of a run together with its heights.
class SolverState {
 public:
  SolverState(MeshProfile profile, int j = 0);

  const GridSpec& grid() const { return profile_.grid(); }
  int j() const { return j_; }
  double time() const { return grid().time(j_); }
  const MeshProfile& profile() const { return profile_; }

 private:
  MeshProfile profile_;
  int j_;
};

/// Right-hand side (D_t w)_k of the interior update, given the level's
/// discrete length.
double dt_interior(const MeshProfile& f, int k, double length);

/// Advances one time level. Throws std::logic_error past the final level.
SolverState step(const SolverState& state);

/// A run was refused because a stability hypothesis does not hold.
class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Condition {
  std::string name;
  bool evaluated = true;
  bool ok = false;
  double margin = 0.0;
};

struct StabilityReport {
  Condition cfl;               // delta_u^2 - 2 delta_t >= 0
  Condition domain;            // 2 rho0 - delta_u >= 0
  Condition gradient;          // rho0 - delta_u (1 + |D+ w0|^2) >= 0
  Condition d0_nonvanishing;   // |D0 w0| > 0, margin is the norm itself
  Condition convergence_cond1; // needs derivative bound B
  Condition convergence_cond2; // needs derivative bound B

  /// The conditions the run driver enforces.
  bool hard_ok() const { return cfl.ok && domain.ok && gradient.ok; }
  std::vector<const Condition*> all() const;
  /// Human-readable summary of failing hard conditions.
  std::string hard_failures() const;
};

StabilityReport validate_stability(const GridSpec& grid, const MeshProfile& w0,
                                   std::optional<double> derivative_bound = std::nullopt);

struct Snapshot {
  double t;
  MeshProfile profile;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::vector<DiagnosticsRecord> diagnostics;
};

/// Maps each requested time to the first time level at or after it.
/// Requests outside [0, T] throw std::invalid_argument. Duplicate levels
/// are collapsed; the result is sorted.
std::vector<int> snapshot_levels(const GridSpec& grid, const std::vector<double>& times);

/// Steps m times (zero times when T == 0), recording the profile at the
/// requested times and diagnostics at those times plus t = 0 and t = T.
RunResult run(const MeshProfile& w0, const std::vector<double>& snapshot_times);

}  // namespace dcflow

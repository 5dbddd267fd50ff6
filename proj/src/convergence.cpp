#include "dcflow/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>

#include "dcflow/solver.hpp"

namespace dcflow {

TimeStep choose_time_step(double delta_u, double t_final) {
  if (!(delta_u > 0.0)) throw std::invalid_argument("choose_time_step: delta_u must be > 0");
  if (!(t_final > 0.0)) throw std::invalid_argument("choose_time_step: T must be > 0");
  const double steps = std::ceil(2.0 * t_final / (delta_u * delta_u));
  if (!(steps < static_cast<double>(std::numeric_limits<int>::max()))) {
    throw std::overflow_error("choose_time_step: step count " + std::to_string(steps) +
                              " exceeds the supported range");
  }
  int m = static_cast<int>(steps);
  // The ceiling is taken in floating point; nudge if rounding broke the bound.
  while (2.0 * (t_final / m) > delta_u * delta_u) ++m;
  return {m, t_final / m};
}

std::vector<double> compute_rates(const std::vector<double>& log2_errors) {
  if (log2_errors.size() < 2) throw std::invalid_argument("compute_rates: need >= 2 errors");
  std::vector<double> rates;
  rates.reserve(log2_errors.size() - 1);
  for (std::size_t i = 1; i < log2_errors.size(); ++i) {
    rates.push_back(log2_errors[i - 1] - log2_errors[i]);
  }
  return rates;
}

namespace {

struct LevelSetup {
  int level;
  GridSpec grid;
  int eval_level;
};

MeshProfile solve_level(const ProfileSpec& profile, const LevelSetup& setup) {
  const MeshProfile w0 = build_profile(profile, setup.grid);
  RunResult result = run(w0, {setup.grid.time(setup.eval_level)});
  return std::move(result.snapshots.front().profile);
}

}  // namespace

ConvergenceReport refinement_study(const ProfileSpec& profile, double rho0, double t_final,
                                   int base_n, int levels, double eval_time,
                                   const StudyOptions& options) {
  if (levels < 2) throw std::invalid_argument("refinement_study: need levels >= 2");
  if (base_n < 2) throw std::invalid_argument("refinement_study: need base_n >= 2");
  if (!(t_final > 0.0)) throw std::invalid_argument("refinement_study: T must be > 0");
  if (!(eval_time >= 0.0 && eval_time <= t_final)) {
    throw std::invalid_argument("refinement_study: eval_time must lie in [0, T]");
  }
  if (levels > 30 || base_n > (std::numeric_limits<int>::max() >> (levels - 1))) {
    throw std::overflow_error("refinement_study: finest grid too large");
  }

  std::vector<LevelSetup> setups;
  for (int i = 0; i < levels; ++i) {
    const int n = base_n << i;
    const double du = rho0 / n;
    const TimeStep ts = choose_time_step(du, t_final);
    const GridSpec grid(rho0, n, t_final, ts.m);
    if (!options.allow_unstable) {
      const StabilityReport report = validate_stability(grid, build_profile(profile, grid));
      if (!report.hard_ok()) {
        throw StabilityError("level " + std::to_string(i) + " (n=" + std::to_string(n) +
                                 "): " + report.hard_failures());
      }
    }
    const int eval_level = snapshot_levels(grid, {eval_time}).front();
    setups.push_back({i, grid, eval_level});
  }

  std::vector<MeshProfile> finals;
  finals.reserve(setups.size());
  if (options.parallel) {
    std::vector<std::future<MeshProfile>> jobs;
    // Largest first so the reference level starts immediately.
    for (auto it = setups.rbegin(); it != setups.rend(); ++it) {
      jobs.push_back(std::async(std::launch::async,
                                [&profile, setup = *it] { return solve_level(profile, setup); }));
    }
    std::vector<MeshProfile> reversed;
    for (auto& job : jobs) reversed.push_back(job.get());
    finals.assign(std::make_move_iterator(reversed.rbegin()),
                  std::make_move_iterator(reversed.rend()));
  } else {
    for (const auto& setup : setups) finals.push_back(solve_level(profile, setup));
  }

  ConvergenceReport report;
  report.profile = profile;
  report.rho0 = rho0;
  report.t_final = t_final;
  report.eval_time = eval_time;
  report.base_n = base_n;
  report.levels = levels;
  report.reference_level = levels - 1;

  const MeshProfile& reference = finals.back();
  std::vector<double> log2_errors;
  for (int i = 0; i < levels; ++i) {
    ConvergenceRow row;
    row.level = i;
    row.n = finals[static_cast<std::size_t>(i)].n();
    row.delta_u = finals[static_cast<std::size_t>(i)].delta_u();
    if (i < levels - 1) {
      const MeshProfile coarse_ref = restrict_to_coarse(reference, 1 << (levels - 1 - i));
      const auto& level_values = finals[static_cast<std::size_t>(i)].values();
      double err = 0.0;
      for (int k = 0; k <= row.n; ++k) {
        err = std::max(err, std::abs(level_values[static_cast<std::size_t>(k)] - coarse_ref[k]));
      }
      row.log2_linf_error = std::log2(err);
      log2_errors.push_back(*row.log2_linf_error);
      if (log2_errors.size() >= 2) {
        row.rate = compute_rates(log2_errors).back();
      }
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace dcflow

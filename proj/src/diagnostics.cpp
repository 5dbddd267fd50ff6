#include "dcflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dcflow/solver.hpp"

namespace dcflow {

DiagnosticsRecord record(const MeshProfile& f, double t) {
  return {t, sup_norm(f), dplus_sup_norm(f), discrete_length(f), discrete_area(f)};
}

DiagnosticsRecord record(const SolverState& state) { return record(state.profile(), state.time()); }

double graphicality_constant(const DiagnosticsRecord& initial) {
  return 1.0 / std::sqrt(1.0 + initial.sup_dplus * initial.sup_dplus);
}

DtDplusCoefficients dtdplus_coefficients(const MeshProfile& f, int k, double length) {
  if (k < 1 || k > f.n() - 2) {
    throw std::out_of_range("dtdplus_coefficients: node " + std::to_string(k) +
                            " outside [1, n-2]");
  }
  const double d0_k = d_zero(f, k);
  const double d0_k1 = d_zero(f, k + 1);
  const double a_k = 1.0 / (1.0 + d0_k * d0_k);
  const double a_k1 = 1.0 / (1.0 + d0_k1 * d0_k1);
  const double dplus_a = (a_k1 - a_k) / f.delta_u();
  const double sum = d0_k1 + d0_k;
  const double x = 0.5 * (a_k + a_k1);
  const double y = dplus_a + (a_k + a_k1) / (2.0 * length) - sum * sum * a_k * a_k1 / (2.0 * length);
  return {x, y};
}

std::vector<double> dtdplus_residuals(const SolverState& before, const SolverState& after) {
  if (!(before.grid() == after.grid()) || after.j() != before.j() + 1) {
    throw std::invalid_argument("check_dtdplus_identity: states are not consecutive levels");
  }
  const MeshProfile& w = before.profile();
  const MeshProfile& w1 = after.profile();
  const int n = w.n();
  const double du = w.delta_u();
  const double dt = before.grid().delta_t();
  const double length = discrete_length(w);

  std::vector<double> residuals;
  for (int k = 1; k <= n - 2; ++k) {
    const double lhs = (d_plus(w1, k) - d_plus(w, k)) / dt;
    const double dp_prev = d_plus(w, k - 1);
    const double dp = d_plus(w, k);
    const double dp_next = d_plus(w, k + 1);
    const double second_of_dplus = (dp_next - 2.0 * dp + dp_prev) / (du * du);
    const double centred_of_dplus = (dp_next - dp_prev) / (2.0 * du);
    const auto [x, y] = dtdplus_coefficients(w, k, length);
    residuals.push_back(std::abs(lhs - (x * second_of_dplus + y * centred_of_dplus)));
  }
  return residuals;
}

std::optional<double> check_dtdplus_identity(const SolverState& before, const SolverState& after) {
  const auto residuals = dtdplus_residuals(before, after);
  if (residuals.empty()) return std::nullopt;
  return *std::max_element(residuals.begin(), residuals.end());
}

double area_decay_margin(std::span<const DiagnosticsRecord> history, double rho0, double slack) {
  if (history.empty()) throw std::invalid_argument("area_decay_margin: empty history");
  const DiagnosticsRecord& first = history.front();
  const double cg = graphicality_constant(first);
  const double decay = cg * cg / (rho0 * first.length);
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& rec : history) {
    const double bound = first.area * std::exp(-decay * (rec.t - first.t));
    margin = std::min(margin, slack * bound - rec.area);
  }
  return margin;
}

DecayFit fit_decay_rate(std::span<const DiagnosticsRecord> history, double t_lo, double t_hi) {
  std::vector<double> ts;
  std::vector<double> logs;
  bool any_in_window = false;
  for (const auto& rec : history) {
    if (rec.t < t_lo || rec.t > t_hi) continue;
    any_in_window = true;
    if (rec.area > 0.0) {
      ts.push_back(rec.t);
      logs.push_back(std::log(rec.area));
    }
  }
  DecayFit fit;
  if (any_in_window && ts.empty()) {
    fit.closed = true;
    return fit;
  }
  if (ts.size() < 3) {
    throw std::invalid_argument("fit_decay_rate: need >= 3 records with positive area in window");
  }
  const double count = static_cast<double>(ts.size());
  double t_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    t_mean += ts[i];
    y_mean += logs[i];
  }
  t_mean /= count;
  y_mean /= count;
  double stt = 0.0;
  double sty = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double dt = ts[i] - t_mean;
    const double dy = logs[i] - y_mean;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  if (stt == 0.0) throw std::invalid_argument("fit_decay_rate: all records at one time");
  const double slope = sty / stt;
  fit.rate = -slope;
  fit.points = static_cast<int>(ts.size());
  // A flat series is fitted perfectly by slope 0.
  fit.r_squared = syy == 0.0 ? 1.0 : (sty * sty) / (stt * syy);
  return fit;
}

DecayFit fit_decay_rate(std::span<const DiagnosticsRecord> history) {
  if (history.empty()) throw std::invalid_argument("fit_decay_rate: empty history");
  const double t_end = history.back().t;
  return fit_decay_rate(history, t_end / 4.0, t_end);
}

std::vector<LengthViolation> check_length_monotone(std::span<const DiagnosticsRecord> history,
                                                   double tolerance) {
  std::vector<LengthViolation> out;
  for (std::size_t i = 1; i < history.size(); ++i) {
    const double increase = history[i].length - history[i - 1].length;
    if (increase > tolerance) out.push_back({i, history[i].t, increase});
  }
  return out;
}

}  // namespace dcflow

#pragma once

// Per-level observables and monitors derived from the continuous theory:
// area decay, length monotonicity, and the D_t D_+ commutation identity.

#include <optional>
#include <span>
#include <vector>

#include "dcflow/mesh_ops.hpp"

namespace dcflow {

class SolverState;

struct DiagnosticsRecord {
  double t = 0.0;
  double sup_h = 0.0;
  double sup_dplus = 0.0;
  double length = 0.0;
  double area = 0.0;
};

DiagnosticsRecord record(const MeshProfile& f, double t);
DiagnosticsRecord record(const SolverState& state);

/// Graph constant 1 / sqrt(1 + |D+ w|^2) of a record (use the t = 0 one).
double graphicality_constant(const DiagnosticsRecord& initial);

struct DtDplusCoefficients {
  double x;
  double y;
};

/// Coefficients of (D_t D_+ w)_k = X_k (D^2 D_+ w)_k + Y_k (D_0 D_+ w)_k,
/// valid for 1 <= k <= n-2.
DtDplusCoefficients dtdplus_coefficients(const MeshProfile& f, int k, double length);

/// Max over 1 <= k <= n-2 of |D_t D_+ w - (X D^2 D_+ w + Y D_0 D_+ w)|
/// between two consecutive levels. Empty when n < 3 (no admissible k).
/// Throws std::invalid_argument if the states are not consecutive.
std::optional<double> check_dtdplus_identity(const SolverState& before, const SolverState& after);

/// Per-node residuals of the same identity (index 0 corresponds to k = 1).
std::vector<double> dtdplus_residuals(const SolverState& before, const SolverState& after);

/// min over records of [1.1 * A(0) exp(-C_G^2 t / (rho0 L(0))) - A(t)], with
/// C_G from the first record. `rho0` is the domain length.
double area_decay_margin(std::span<const DiagnosticsRecord> history, double rho0,
                         double slack = 1.1);

struct DecayFit {
  double rate = 0.0;
  double r_squared = 0.0;
  int points = 0;
  /// Set when no record in the window has positive area.
  bool closed = false;
};

/// Least-squares fit of ln A(t) over t in [t_lo, t_hi]; rate = -slope.
/// Throws std::invalid_argument with fewer than three usable records.
DecayFit fit_decay_rate(std::span<const DiagnosticsRecord> history, double t_lo, double t_hi);
/// Window [T/4, T] where T is the last record's time.
DecayFit fit_decay_rate(std::span<const DiagnosticsRecord> history);

struct LengthViolation {
  std::size_t index;
  double t;
  double increase;
};

std::vector<LengthViolation> check_length_monotone(std::span<const DiagnosticsRecord> history,
                                                   double tolerance = 1e-9);

}  // namespace dcflow

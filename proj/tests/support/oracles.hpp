#pragma once

// Test-only reference evaluations. These are written straight from the
// scheme's formulas in long double and share no code with the solver.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dcflow/mesh_ops.hpp"

namespace dcflow::testing {

using Real = long double;

inline Real oracle_length(const std::vector<Real>& w, Real du) {
  Real sum = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const Real s = (w[i + 1] - w[i]) / du;
    sum += std::sqrt(1 + s * s);
  }
  return du * sum;
}

/// (D_t w)_k = (D^2 w + D_0 w / L) / (1 + (D_0 w)^2) at interior k.
inline Real oracle_rate(const std::vector<Real>& w, std::size_t k, Real du, Real length) {
  const Real d0 = (w[k + 1] - w[k - 1]) / (2 * du);
  const Real d2 = (w[k + 1] - 2 * w[k] + w[k - 1]) / (du * du);
  return (d2 + d0 / length) / (1 + d0 * d0);
}

/// One explicit level evaluated term by term.
inline std::vector<Real> oracle_step(const std::vector<Real>& w, Real du, Real dt) {
  const std::size_t n = w.size() - 1;
  const Real length = oracle_length(w, du);
  std::vector<Real> next(w.size());
  for (std::size_t k = 1; k < n; ++k) next[k] = w[k] + dt * oracle_rate(w, k, du, length);
  next[n] = 0;
  next[0] = w[0] + dt * oracle_rate(w, 1, du, length);
  return next;
}

inline std::vector<Real> widen(const MeshProfile& f) {
  return {f.values().begin(), f.values().end()};
}

/// Random profile satisfying h_u(0) = 0 and h(rho0) = 0 in the continuum:
/// a random combination of cos((j + 1/2) pi u / rho0), plus optional
/// nodewise noise. The last node is exactly zero.
inline MeshProfile random_profile(std::mt19937_64& rng, const GridSpec& grid, double amplitude,
                                  double noise = 0.0, bool nonnegative = false) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> modes(1, 5);
  const int count = modes(rng);
  std::vector<double> c(static_cast<std::size_t>(count));
  for (auto& x : c) x = coef(rng);
  if (nonnegative) {
    c.assign(c.size(), 0.0);
    c[0] = std::abs(coef(rng)) + 0.2;  // dominant positive first mode
  }
  std::vector<double> v(static_cast<std::size_t>(grid.n()) + 1);
  for (int k = 0; k < grid.n(); ++k) {
    const double u = grid.node(k);
    double h = 0.0;
    for (int j = 0; j < count; ++j) {
      h += c[static_cast<std::size_t>(j)] *
           std::cos((j + 0.5) * std::numbers::pi * u / grid.rho0());
    }
    h *= amplitude;
    if (noise > 0.0) h += noise * coef(rng);
    if (nonnegative) h = std::abs(h);
    v[static_cast<std::size_t>(k)] = h;
  }
  v.back() = 0.0;
  return {grid, std::move(v)};
}

}  // namespace dcflow::testing

#include "dcflow/mesh_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dcflow {

namespace {

void require_index(bool ok, const char* op, int k, int n) {
  if (!ok) {
    throw std::out_of_range(std::string(op) + ": node " + std::to_string(k) +
                            " outside operator domain for n=" + std::to_string(n));
  }
}

}  // namespace

GridSpec::GridSpec(double rho0, int n, double t_final, int m)
    : rho0_(rho0), n_(n), t_final_(t_final), m_(m) {
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) {
    throw std::invalid_argument("GridSpec: rho0 must be positive and finite");
  }
  if (n < 1) throw std::invalid_argument("GridSpec: n must be >= 1");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw std::invalid_argument("GridSpec: T must be non-negative and finite");
  }
  if (m < 1) throw std::invalid_argument("GridSpec: m must be >= 1");
  delta_u_ = rho0 / n;
  delta_t_ = t_final / m;
}

MeshProfile::MeshProfile(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid_.n()) + 1) {
    throw std::invalid_argument("MeshProfile: expected n+1 = " + std::to_string(grid_.n() + 1) +
                                " values, got " + std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("MeshProfile: non-finite value");
  }
}

MeshProfile MeshProfile::zero(const GridSpec& grid) {
  return {grid, std::vector<double>(static_cast<std::size_t>(grid.n()) + 1, 0.0)};
}

MeshProfile MeshProfile::sample(const GridSpec& grid, const std::function<double(double)>& fn) {
  std::vector<double> v(static_cast<std::size_t>(grid.n()) + 1);
  for (int k = 0; k <= grid.n(); ++k) v[static_cast<std::size_t>(k)] = fn(grid.node(k));
  return {grid, std::move(v)};
}

double d_plus(const MeshProfile& f, int k) {
  require_index(k >= 0 && k <= f.n() - 1, "d_plus", k, f.n());
  return (f[k + 1] - f[k]) / f.delta_u();
}

double d_minus(const MeshProfile& f, int k) {
  require_index(k >= 1 && k <= f.n(), "d_minus", k, f.n());
  return (f[k] - f[k - 1]) / f.delta_u();
}

double d_zero(const MeshProfile& f, int k) {
  require_index(k >= 1 && k <= f.n() - 1, "d_zero", k, f.n());
  return (f[k + 1] - f[k - 1]) / (2.0 * f.delta_u());
}

double d_second(const MeshProfile& f, int k) {
  require_index(k >= 1 && k <= f.n() - 1, "d_second", k, f.n());
  const double du = f.delta_u();
  return (f[k + 1] - 2.0 * f[k] + f[k - 1]) / (du * du);
}

double discrete_length(std::span<const double> values, double delta_u) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double slope = (values[i + 1] - values[i]) / delta_u;
    sum += std::sqrt(1.0 + slope * slope);
  }
  return delta_u * sum;
}

double discrete_length(const MeshProfile& f) { return discrete_length(f.values(), f.delta_u()); }

double discrete_area(const MeshProfile& f) {
  const int n = f.n();
  double sum = 0.5 * f[0];
  for (int k = 1; k < n; ++k) sum += f[k];
  sum += 0.5 * f[n];
  return f.delta_u() * sum;
}

double sup_norm(const MeshProfile& f) {
  double s = 0.0;
  for (double v : f.values()) s = std::max(s, std::abs(v));
  return s;
}

double dplus_sup_norm(const MeshProfile& f) {
  double s = 0.0;
  for (int k = 0; k < f.n(); ++k) s = std::max(s, std::abs(d_plus(f, k)));
  return s;
}

double dzero_sup_norm(const MeshProfile& f) {
  double s = 0.0;
  for (int k = 1; k < f.n(); ++k) s = std::max(s, std::abs(d_zero(f, k)));
  return s;
}

MeshProfile difference(const MeshProfile& a, const MeshProfile& b) {
  if (a.n() != b.n() || a.grid().rho0() != b.grid().rho0()) {
    throw std::invalid_argument("difference: profiles live on different grids");
  }
  std::vector<double> v(a.values().begin(), a.values().end());
  for (int k = 0; k <= a.n(); ++k) v[static_cast<std::size_t>(k)] -= b[k];
  return {a.grid(), std::move(v)};
}

MeshProfile restrict_to_coarse(const MeshProfile& fine, int factor) {
  if (factor < 1 || fine.n() % factor != 0) {
    throw std::invalid_argument("restrict: factor " + std::to_string(factor) +
                                " does not divide n=" + std::to_string(fine.n()));
  }
  const int coarse_n = fine.n() / factor;
  const GridSpec& g = fine.grid();
  std::vector<double> v(static_cast<std::size_t>(coarse_n) + 1);
  for (int k = 0; k <= coarse_n; ++k) v[static_cast<std::size_t>(k)] = fine[k * factor];
  return {GridSpec(g.rho0(), coarse_n, g.t_final(), g.m()), std::move(v)};
}

}  // namespace dcflow

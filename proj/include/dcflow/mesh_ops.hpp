#pragma once

// Uniform grid, node-indexed mesh functions, and the finite-difference
// operators/functionals of the explicit graph-flow scheme.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dcflow {

/// Space/time discretisation: u_k = k * delta_u for k = 0..n,
/// t_j = j * delta_t for j = 0..m.
class GridSpec {
 public:
  GridSpec(double rho0, int n, double t_final, int m);

  double rho0() const { return rho0_; }
  int n() const { return n_; }
  double delta_u() const { return delta_u_; }
  double t_final() const { return t_final_; }
  int m() const { return m_; }
  double delta_t() const { return delta_t_; }

  double node(int k) const { return k * delta_u_; }
  /// Time of level j; the last level reports t_final exactly.
  double time(int j) const { return j == m_ ? t_final_ : j * delta_t_; }

  /// Same spatial grid with a different time discretisation.
  GridSpec with_time(double t_final, int m) const { return {rho0_, n_, t_final, m}; }

  bool operator==(const GridSpec&) const = default;

 private:
  double rho0_;
  int n_;
  double delta_u_;
  double t_final_;
  int m_;
  double delta_t_;
};

/// Heights w_0..w_n at the nodes of one time level.
class MeshProfile {
 public:
  MeshProfile(GridSpec grid, std::vector<double> values);

  static MeshProfile zero(const GridSpec& grid);
  static MeshProfile sample(const GridSpec& grid, const std::function<double(double)>& fn);

  const GridSpec& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](int k) const { return values_[static_cast<std::size_t>(k)]; }
  int n() const { return grid_.n(); }
  double delta_u() const { return grid_.delta_u(); }

  bool operator==(const MeshProfile&) const = default;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

// Pointwise operators. Each throws std::out_of_range outside its domain.
double d_plus(const MeshProfile& f, int k);    // 0 <= k <= n-1
double d_minus(const MeshProfile& f, int k);   // 1 <= k <= n
double d_zero(const MeshProfile& f, int k);    // 1 <= k <= n-1
double d_second(const MeshProfile& f, int k);  // 1 <= k <= n-1

/// delta_u * sum_{i<n} sqrt(1 + (D+ f)_i^2), summed left to right.
double discrete_length(const MeshProfile& f);
double discrete_length(std::span<const double> values, double delta_u);

/// Trapezoid rule over [0, rho0].
double discrete_area(const MeshProfile& f);

double sup_norm(const MeshProfile& f);
double dplus_sup_norm(const MeshProfile& f);
/// max over interior nodes of |D0 f|; zero when there are none.
double dzero_sup_norm(const MeshProfile& f);

/// Nodewise difference a - b; both must live on the same grid.
MeshProfile difference(const MeshProfile& a, const MeshProfile& b);

/// Exact injection onto the grid with n / factor cells.
MeshProfile restrict_to_coarse(const MeshProfile& fine, int factor);

}  // namespace dcflow

#include "dcflow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dcflow/diagnostics.hpp"

namespace dcflow {

namespace {

// Reciprocal grid factors; shared by dt_interior and the level update so
// both produce identical bits.
struct Stencil {
  double inv_two_du;
  double inv_du_sq;
  double inv_length;

  Stencil(double du, double length)
      : inv_two_du(1.0 / (2.0 * du)), inv_du_sq(1.0 / (du * du)), inv_length(1.0 / length) {}

  double rate(double left, double centre, double right) const {
    const double d0 = (right - left) * inv_two_du;
    const double d2 = (right - 2.0 * centre + left) * inv_du_sq;
    const double a = 1.0 / (1.0 + d0 * d0);
    return a * (d2 + d0 * inv_length);
  }
};

// One explicit level: interior into `next`, then the Dirichlet and
// Neumann-type boundary rows. `next` must not alias `cur`.
void advance(std::span<const double> cur, std::span<double> next, double du, double dt) {
  const std::size_t n = cur.size() - 1;
  const Stencil stencil(du, discrete_length(cur, du));
  const double* w = cur.data();
  double* out = next.data();
  for (std::size_t k = 1; k < n; ++k) {
    out[k] = w[k] + dt * stencil.rate(w[k - 1], w[k], w[k + 1]);
  }
  out[n] = 0.0;
  out[0] = w[0] + (out[1] - w[1]);
}

void require_scheme_grid(const GridSpec& g) {
  if (g.n() < 2) {
    throw std::invalid_argument("scheme needs n >= 2 (an interior node), got n=" +
                                std::to_string(g.n()));
  }
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

SolverState::SolverState(MeshProfile profile, int j) : profile_(std::move(profile)), j_(j) {
  require_scheme_grid(profile_.grid());
  if (j_ < 0 || j_ > profile_.grid().m()) {
    throw std::invalid_argument("SolverState: level " + std::to_string(j_) + " outside [0, m]");
  }
  if (profile_[profile_.n()] != 0.0) {
    throw std::invalid_argument("SolverState: Dirichlet node w_n must be 0");
  }
}

double dt_interior(const MeshProfile& f, int k, double length) {
  if (k < 1 || k > f.n() - 1) {
    throw std::out_of_range("dt_interior: node " + std::to_string(k) + " is not interior");
  }
  if (!(length > 0.0)) throw std::invalid_argument("dt_interior: length must be positive");
  return Stencil(f.delta_u(), length).rate(f[k - 1], f[k], f[k + 1]);
}

SolverState step(const SolverState& state) {
  const GridSpec& g = state.grid();
  if (state.j() >= g.m()) {
    throw std::logic_error("step: already at final level m=" + std::to_string(g.m()));
  }
  std::vector<double> next(static_cast<std::size_t>(g.n()) + 1);
  advance(state.profile().values(), next, g.delta_u(), g.delta_t());
  if (!all_finite(next)) {
    throw std::runtime_error("step: non-finite values at level " + std::to_string(state.j() + 1));
  }
  return {MeshProfile(g, std::move(next)), state.j() + 1};
}

std::vector<const Condition*> StabilityReport::all() const {
  return {&cfl, &domain, &gradient, &d0_nonvanishing, &convergence_cond1, &convergence_cond2};
}

std::string StabilityReport::hard_failures() const {
  std::ostringstream out;
  for (const Condition* c : {&cfl, &domain, &gradient}) {
    if (!c->ok) {
      if (out.tellp() > 0) out << "; ";
      out << c->name << " condition violated (margin " << c->margin << ")";
    }
  }
  return out.str();
}

StabilityReport validate_stability(const GridSpec& grid, const MeshProfile& w0,
                                   std::optional<double> derivative_bound) {
  const double du = grid.delta_u();
  const double dt = grid.delta_t();
  const double rho0 = grid.rho0();
  const double dplus = dplus_sup_norm(w0);
  const double dzero = dzero_sup_norm(w0);

  StabilityReport r;
  r.cfl = {"CFL", true, false, du * du - 2.0 * dt};
  r.domain = {"domain", true, false, 2.0 * rho0 - du};
  r.gradient = {"gradient", true, false, rho0 - du * (1.0 + dplus * dplus)};
  r.d0_nonvanishing = {"D0-nonvanishing", true, dzero > 0.0, dzero};
  for (Condition* c : {&r.cfl, &r.domain, &r.gradient}) c->ok = c->margin >= 0.0;

  r.convergence_cond1 = {"convergence-1", false, false, 0.0};
  r.convergence_cond2 = {"convergence-2", false, false, 0.0};
  if (derivative_bound) {
    const double b = *derivative_bound;
    const double a0 = 1.0 / (1.0 + dzero * dzero);
    r.convergence_cond1.evaluated = true;
    r.convergence_cond1.margin = (1.0 - a0) - du;
    r.convergence_cond1.ok = r.convergence_cond1.margin >= 0.0;

    const double rhs = du / 2.0 / rho0 +
                       du / 2.0 *
                           (1.0 / rho0 * (1.0 + du * du / 6.0) * b + (1.0 + du * du / 12.0) * b);
    r.convergence_cond2.evaluated = true;
    r.convergence_cond2.margin = a0 - rhs;
    r.convergence_cond2.ok = r.convergence_cond2.margin >= 0.0;
  }
  return r;
}

std::vector<int> snapshot_levels(const GridSpec& grid, const std::vector<double>& times) {
  const double T = grid.t_final();
  const int last = T == 0.0 ? 0 : grid.m();
  std::vector<int> levels;
  levels.reserve(times.size());
  for (double t : times) {
    if (!(t >= 0.0 && t <= T) || !std::isfinite(t)) {
      throw std::invalid_argument("snapshot time " + std::to_string(t) + " outside [0, T]");
    }
    int j = 0;
    if (last > 0) {
      // Relative slack absorbs the rounding in t_j = j * delta_t.
      j = static_cast<int>(std::ceil(t / grid.delta_t() * (1.0 - 1e-12)));
      j = std::clamp(j, 0, last);
      while (j > 0 && grid.time(j - 1) >= t) --j;
    }
    levels.push_back(j);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

RunResult run(const MeshProfile& w0, const std::vector<double>& snapshot_times) {
  const GridSpec& g = w0.grid();
  require_scheme_grid(g);
  if (w0[g.n()] != 0.0) throw std::invalid_argument("run: initial profile must have w_n = 0");

  const int steps = g.t_final() == 0.0 ? 0 : g.m();
  const std::vector<int> snap = snapshot_levels(g, snapshot_times);

  RunResult out;
  std::vector<double> cur(w0.values().begin(), w0.values().end());
  std::vector<double> next(cur.size());
  std::size_t next_snap = 0;

  auto observe = [&](int j) {
    const bool is_snap = next_snap < snap.size() && snap[next_snap] == j;
    if (!is_snap && j != 0 && j != steps) return;
    if (!all_finite(cur)) {
      throw std::runtime_error("run: solution became non-finite by t=" + std::to_string(g.time(j)));
    }
    MeshProfile level(g, cur);
    out.diagnostics.push_back(record(level, g.time(j)));
    if (is_snap) {
      out.snapshots.push_back({g.time(j), std::move(level)});
      ++next_snap;
    }
  };

  observe(0);
  for (int j = 0; j < steps; ++j) {
    advance(cur, next, g.delta_u(), g.delta_t());
    cur.swap(next);
    observe(j + 1);
  }
  return out;
}

}  // namespace dcflow

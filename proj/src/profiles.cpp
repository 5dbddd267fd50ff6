#include "dcflow/profiles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dcflow {

namespace {

void require_shape_parameters(double r1, double r2) {
  if (!(r1 > 0.5 && r1 < 1.0)) {
    throw std::invalid_argument("profile: r1 must lie in (0.5, 1), got " + std::to_string(r1));
  }
  if (!(r2 > 0.0) || !std::isfinite(r2)) {
    throw std::invalid_argument("profile: r2 must be positive, got " + std::to_string(r2));
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_field(const std::string& raw, const std::filesystem::path& path, int line) {
  const std::string field = trim(raw);
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  // from_chars rejects a leading '+', which some digitisers emit.
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": non-numeric field '" +
                             field + "'");
  }
  return value;
}

// Reads a two-column CSV with a header line; returns the data rows.
std::vector<CurvePoint> read_two_column_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<CurvePoint> points;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected exactly two comma-separated fields");
    }
    points.push_back({parse_field(line.substr(0, comma), path, lineno),
                      parse_field(line.substr(comma + 1), path, lineno)});
  }
  if (!header_seen) throw std::runtime_error(path.string() + ": empty file");
  return points;
}

}  // namespace

ProfileKind parse_profile_kind(const std::string& name) {
  if (name == "inflection") return ProfileKind::inflection;
  if (name == "bump") return ProfileKind::bump;
  if (name == "experimental") return ProfileKind::experimental;
  if (name == "file") return ProfileKind::file;
  throw std::invalid_argument("unknown profile kind '" + name + "'");
}

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::inflection: return "inflection";
    case ProfileKind::bump: return "bump";
    case ProfileKind::experimental: return "experimental";
    case ProfileKind::file: return "file";
  }
  return "unknown";
}

double SinusoidCoefficients::operator()(double u) const {
  return amplitude * std::cos(frequency * u) + offset;
}

SinusoidCoefficients inflection_coefficients(double rho0, double r1, double r2,
                                             SinusoidScaling scaling) {
  require_shape_parameters(r1, r2);
  const double b = scaling == SinusoidScaling::normalised
                       ? std::numbers::pi / (2.0 * r1 * rho0)
                       : std::numbers::pi / (2.0 * r1);
  // The literal variant normalises the amplitude by cos(B) rather than cos(B rho0).
  const double cos_norm =
      scaling == SinusoidScaling::normalised ? std::cos(b * rho0) : std::cos(b);
  const double a = rho0 / (r2 * (1.0 + std::abs(cos_norm)));
  return {a, b, -a * std::cos(b * rho0)};
}

double bump_term(double u, double rho0) {
  const double centre = rho0 / 2.0;
  const double radius = (rho0 - centre) / 3.0;
  const double height = 2.0 * std::exp(1.0);
  const double gap = radius - (u - centre) * (u - centre);
  if (gap <= 0.0) return 0.0;
  return height * std::exp(-radius / gap);
}

MeshProfile inflection_profile(const GridSpec& grid, double r1, double r2,
                               SinusoidScaling scaling) {
  const auto g1 = inflection_coefficients(grid.rho0(), r1, r2, scaling);
  std::vector<double> v(static_cast<std::size_t>(grid.n()) + 1);
  for (int k = 0; k < grid.n(); ++k) v[static_cast<std::size_t>(k)] = g1(grid.node(k));
  v.back() = 0.0;  // g1(rho0) vanishes analytically
  return {grid, std::move(v)};
}

MeshProfile bump_profile(const GridSpec& grid, double r1, double r2, SinusoidScaling scaling) {
  const auto g1 = inflection_coefficients(grid.rho0(), r1, r2, scaling);
  std::vector<double> v(static_cast<std::size_t>(grid.n()) + 1);
  for (int k = 0; k < grid.n(); ++k) {
    const double u = grid.node(k);
    v[static_cast<std::size_t>(k)] = g1(u) + bump_term(u, grid.rho0());
  }
  v.back() = 0.0;
  return {grid, std::move(v)};
}

std::vector<CurvePoint> read_curve_csv(const std::filesystem::path& path) {
  return read_two_column_csv(path);
}

MeshProfile curve_to_profile(std::vector<CurvePoint> points, const GridSpec& grid) {
  if (points.size() < 2) {
    throw std::invalid_argument("curve: need at least 2 points, got " +
                                std::to_string(points.size()));
  }
  std::sort(points.begin(), points.end(),
            [](const CurvePoint& a, const CurvePoint& b) { return a.x < b.x; });
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].x == points[i - 1].x) {
      throw std::invalid_argument("curve: duplicate x value " + std::to_string(points[i].x));
    }
  }

  const double x0 = points.front().x;
  const double span = points.back().x - x0;
  const double y_shift = points.back().y;
  const double rho0 = grid.rho0();
  for (auto& p : points) {
    p.x = (p.x - x0) / span * rho0;
    p.y -= y_shift;
  }

  // Nodes closer than this to a knot take the knot value verbatim.
  const double snap = 1e-12 * rho0;
  std::vector<double> v(static_cast<std::size_t>(grid.n()) + 1);
  std::size_t seg = 0;
  for (int k = 0; k <= grid.n(); ++k) {
    const double u = grid.node(k);
    while (seg + 2 < points.size() && points[seg + 1].x < u - snap) ++seg;
    const CurvePoint& a = points[seg];
    const CurvePoint& b = points[seg + 1];
    double h;
    if (std::abs(u - a.x) <= snap) {
      h = a.y;
    } else if (std::abs(u - b.x) <= snap) {
      h = b.y;
    } else {
      h = a.y + (b.y - a.y) * ((u - a.x) / (b.x - a.x));
    }
    v[static_cast<std::size_t>(k)] = std::max(h, 0.0);
  }
  v.back() = 0.0;
  return {grid, std::move(v)};
}

MeshProfile load_experimental(const std::filesystem::path& path, const GridSpec& grid) {
  return curve_to_profile(read_two_column_csv(path), grid);
}

MeshProfile load_profile_file(const std::filesystem::path& path, const GridSpec& grid) {
  auto rows = read_two_column_csv(path);
  if (rows.size() != static_cast<std::size_t>(grid.n()) + 1) {
    throw std::invalid_argument(path.string() + ": expected " + std::to_string(grid.n() + 1) +
                                " rows for n=" + std::to_string(grid.n()) + ", got " +
                                std::to_string(rows.size()));
  }
  std::vector<double> v;
  v.reserve(rows.size());
  for (int k = 0; k <= grid.n(); ++k) {
    const auto& row = rows[static_cast<std::size_t>(k)];
    if (std::abs(row.x - grid.node(k)) > 1e-9 * grid.rho0()) {
      throw std::invalid_argument(path.string() + ": row " + std::to_string(k) + " has u=" +
                                  std::to_string(row.x) + ", expected grid node " +
                                  std::to_string(grid.node(k)));
    }
    v.push_back(row.y);
  }
  return {grid, std::move(v)};
}

std::vector<ProfileWarning> validate_profile(const MeshProfile& f) {
  const int n = f.n();
  if (f[n] != 0.0) {
    std::ostringstream msg;
    msg << "Dirichlet condition violated: w_n = " << f[n] << " (must be exactly 0)";
    throw std::invalid_argument(msg.str());
  }
  std::vector<ProfileWarning> warnings;
  const double slope0 = d_plus(f, 0);
  if (std::abs(slope0) > 10.0 * f.delta_u()) {
    std::ostringstream msg;
    msg << "Neumann compatibility: |D+w_0| = " << std::abs(slope0) << " exceeds 10*delta_u = "
        << 10.0 * f.delta_u();
    warnings.push_back({msg.str()});
  }
  for (int k = 0; k <= n; ++k) {
    if (f[k] < 0.0) {
      std::ostringstream msg;
      msg << "negative height w_" << k << " = " << f[k];
      warnings.push_back({msg.str()});
      break;
    }
  }
  return warnings;
}

MeshProfile build_profile(const ProfileSpec& spec, const GridSpec& grid) {
  switch (spec.kind) {
    case ProfileKind::inflection: return inflection_profile(grid, spec.r1, spec.r2, spec.scaling);
    case ProfileKind::bump: return bump_profile(grid, spec.r1, spec.r2, spec.scaling);
    case ProfileKind::experimental:
      if (spec.path.empty()) throw std::invalid_argument("experimental profile needs a path");
      return load_experimental(spec.path, grid);
    case ProfileKind::file:
      if (spec.path.empty()) throw std::invalid_argument("file profile needs a path");
      return load_profile_file(spec.path, grid);
  }
  throw std::invalid_argument("unknown profile kind");
}

}  // namespace dcflow

#pragma once

// Initial leading-edge profiles: the one-inflection sinusoid, its compactly
// supported bump perturbation, and digitised (x, y) curves read from CSV.

#include <filesystem>
#include <string>
#include <vector>

#include "dcflow/mesh_ops.hpp"

namespace dcflow {

enum class ProfileKind { inflection, bump, experimental, file };

/// How the sinusoid argument is scaled. `normalised` puts the single
/// inflection at u = r1 * rho0; `literal` uses B = pi / (2 r1) unscaled.
enum class SinusoidScaling { normalised, literal };

struct ProfileSpec {
  ProfileKind kind = ProfileKind::inflection;
  double r1 = 0.7;
  double r2 = 2.0;
  std::filesystem::path path;
  SinusoidScaling scaling = SinusoidScaling::normalised;
};

ProfileKind parse_profile_kind(const std::string& name);
std::string to_string(ProfileKind kind);

/// Coefficients of g1(u) = amplitude * cos(frequency * u) + offset.
struct SinusoidCoefficients {
  double amplitude;
  double frequency;
  double offset;

  double operator()(double u) const;
};

SinusoidCoefficients inflection_coefficients(double rho0, double r1, double r2,
                                             SinusoidScaling scaling = SinusoidScaling::normalised);

/// Compact bump m * exp(-r / (r - (u-c)^2)) with c = rho0/2, r = (rho0-c)/3,
/// m = 2e; zero outside |u - c| < sqrt(r).
double bump_term(double u, double rho0);

MeshProfile inflection_profile(const GridSpec& grid, double r1, double r2,
                               SinusoidScaling scaling = SinusoidScaling::normalised);
MeshProfile bump_profile(const GridSpec& grid, double r1, double r2,
                         SinusoidScaling scaling = SinusoidScaling::normalised);

struct CurvePoint {
  double x;
  double y;
};

/// Reads an "x,y" CSV (header required, blank lines skipped).
std::vector<CurvePoint> read_curve_csv(const std::filesystem::path& path);

/// Sort by x, map x onto [0, rho0], shift y so the last point is 0, linearly
/// interpolate to the nodes, clamp negatives to 0 and zero the last node.
MeshProfile curve_to_profile(std::vector<CurvePoint> points, const GridSpec& grid);

MeshProfile load_experimental(const std::filesystem::path& path, const GridSpec& grid);

/// Reads a profile written as "u,h" rows; the node count must match the grid.
MeshProfile load_profile_file(const std::filesystem::path& path, const GridSpec& grid);

struct ProfileWarning {
  std::string message;
};

/// Throws std::invalid_argument when w_n != 0; returns soft warnings for a
/// large D+ at the Neumann end or negative heights.
std::vector<ProfileWarning> validate_profile(const MeshProfile& f);

MeshProfile build_profile(const ProfileSpec& spec, const GridSpec& grid);

}  // namespace dcflow

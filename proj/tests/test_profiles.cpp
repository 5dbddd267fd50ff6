#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "dcflow/io.hpp"
#include "dcflow/profiles.hpp"
#include "doctest.h"

using namespace dcflow;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / "dcflow_profile_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

// Reference values from tests/oracles/closed_forms.py (40-digit mpmath).
TEST_CASE("inflection coefficients for rho0=3, r1=0.7, r2=2") {
  const auto g1 = inflection_coefficients(3.0, 0.7, 2.0);
  CHECK(g1.amplitude == doctest::Approx(0.92393558510971239).epsilon(1e-14));
  CHECK(g1.offset == doctest::Approx(0.57606441489028761).epsilon(1e-14));
  CHECK(g1(0.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(std::abs(g1(3.0)) < 1e-15);
  CHECK(g1(1.5) == doctest::Approx(0.97694504126145848).epsilon(1e-14));
}

TEST_CASE("inflection profile shape") {
  const GridSpec grid(3.0, 300, 4.0, 1);
  const auto f = inflection_profile(grid, 0.7, 2.0);
  CHECK(f[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(f[300] == 0.0);
  // Second difference changes sign once, at u = r1 * rho0 = 2.1 (node 210).
  int sign_changes = 0;
  int where = -1;
  for (int k = 2; k < 300; ++k) {
    if ((d_second(f, k - 1) < 0) != (d_second(f, k) < 0)) {
      ++sign_changes;
      where = k;
    }
  }
  CHECK(sign_changes == 1);
  CHECK(std::abs(grid.node(where) - 2.1) <= grid.delta_u());
  CHECK(validate_profile(f).empty());
}

TEST_CASE("inflection parameters out of range") {
  const GridSpec grid(3.0, 20, 4.0, 1);
  CHECK_THROWS_AS(inflection_profile(grid, 0.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(inflection_profile(grid, 1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(inflection_profile(grid, 0.7, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bump_profile(grid, 0.3, 2.0), std::invalid_argument);
}

TEST_CASE("property: g1 height identity") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> rho(0.5, 10.0), r1(0.501, 0.999), r2(0.2, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double rho0 = rho(rng), a = r1(rng), b = r2(rng);
    const auto f = inflection_profile(GridSpec(rho0, 40, 1.0, 1), a, b);
    CHECK(f[0] == doctest::Approx(rho0 / b).epsilon(1e-12));
    CHECK(f[40] == 0.0);
  }
}

TEST_CASE("bump profile") {
  const GridSpec grid(3.0, 20, 4.0, 1);
  const auto g1 = inflection_profile(grid, 0.7, 2.0);
  const auto g2 = bump_profile(grid, 0.7, 2.0);
  // node 10 is u = 1.5 = c, where the bump peaks at m / e = 2
  CHECK(bump_term(1.5, 3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(g2[10] == doctest::Approx(2.9769450412614585).epsilon(1e-14));
  const double c = 1.5, radius = 0.5;
  for (int k = 0; k <= 20; ++k) {
    const double u = grid.node(k);
    CHECK(g2[k] >= g1[k]);
    if (std::abs(u - c) >= std::sqrt(radius)) CHECK(g2[k] == g1[k]);
  }
  CHECK(g2[20] == 0.0);
  CHECK(bump_term(c + std::sqrt(radius), 3.0) == 0.0);
  CHECK(bump_term(-5.0, 3.0) == 0.0);
}

TEST_CASE("property: constructed profiles validate") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> r1(0.55, 0.95), r2(1.0, 4.0);
  std::uniform_int_distribution<int> cells(10, 400);
  for (int trial = 0; trial < 50; ++trial) {
    const GridSpec grid(3.0, cells(rng), 1.0, 1);
    const double a = r1(rng), b = r2(rng);
    CHECK(validate_profile(inflection_profile(grid, a, b)).empty());
    CHECK_NOTHROW(validate_profile(bump_profile(grid, a, b)));
  }
}

TEST_CASE("literal sinusoid scaling is selectable") {
  const auto lit = inflection_coefficients(3.0, 0.7, 2.0, SinusoidScaling::literal);
  CHECK(lit.frequency == doctest::Approx(std::numbers::pi / 1.4));
  CHECK(lit(3.0) == doctest::Approx(0.0).epsilon(1e-12));
  const auto f = inflection_profile(GridSpec(3.0, 60, 1.0, 1), 0.7, 2.0, SinusoidScaling::literal);
  bool has_negative = false;
  for (double v : f.values()) has_negative = has_negative || v < 0.0;
  CHECK(has_negative);
}

TEST_CASE("curve ingestion") {
  const GridSpec grid(3.0, 3, 1.0, 1);
  SUBCASE("affine map and interpolation") {
    const auto f = curve_to_profile({{0, 1}, {1, 0}}, grid);
    CHECK(f[0] == 1.0);
    CHECK(f[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(f[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(f[3] == 0.0);
  }
  SUBCASE("unsorted input") {
    const auto f = curve_to_profile({{1, 0}, {0, 1}}, grid);
    CHECK(f[0] == 1.0);
  }
  SUBCASE("translation by the last height") {
    const auto f = curve_to_profile({{10, 1.2}, {11, 0.7}, {13, 0.2}}, grid);
    // x maps to u = 0, 1, 3; y shifts by -0.2
    CHECK(f[0] == doctest::Approx(1.0));
    CHECK(f[1] == doctest::Approx(0.5));
    CHECK(f[2] == doctest::Approx(0.25));
    CHECK(f[3] == 0.0);
  }
  SUBCASE("negatives clamp to zero") {
    const auto f = curve_to_profile({{0, 1}, {1, -0.5}, {2, 0.0}, {3, 0.0}}, grid);
    CHECK(f[1] == 0.0);
  }
  SUBCASE("knots on the grid reproduce exactly") {
    const auto f = curve_to_profile({{0, 0.9}, {1, 0.7}, {2, 0.31}, {3, 0.0}}, grid);
    CHECK(f[0] == 0.9);
    CHECK(f[1] == 0.7);
    CHECK(f[2] == 0.31);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(curve_to_profile({{0, 1}}, grid), std::invalid_argument);
    CHECK_THROWS_AS(curve_to_profile({{0, 1}, {1, 0}, {1, 2}}, grid), std::invalid_argument);
  }
}

TEST_CASE("experimental CSV parsing") {
  const GridSpec grid(3.0, 3, 1.0, 1);
  const auto ok = temp_file("ok.csv", "x,y\n0,1\n\n1,0\n");
  CHECK(load_experimental(ok, grid)[1] == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS(load_experimental(temp_file("bad.csv", "x,y\n0,abc\n1,0\n"), grid));
  CHECK_THROWS(load_experimental(temp_file("one.csv", "x,y\n0,1\n"), grid));
  CHECK_THROWS(load_experimental(temp_file("three.csv", "x,y\n0,1,2\n1,0,0\n"), grid));
  CHECK_THROWS(load_experimental("/nonexistent/curve.csv", grid));
}

TEST_CASE("property: experimental ingestion is idempotent under re-export") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> x(0.0, 50.0), y(0.0, 4.0);
  std::uniform_int_distribution<int> cells(3, 200);
  for (int trial = 0; trial < 40; ++trial) {
    std::ostringstream csv;
    csv << "x,y\n";
    for (int i = 0; i < 25; ++i) csv << io::format_double(x(rng)) << ',' << io::format_double(y(rng)) << '\n';
    const GridSpec grid(3.0, cells(rng), 1.0, 1);
    const auto first = load_experimental(temp_file("rand.csv", csv.str()), grid);
    std::ostringstream exported;
    io::write_profile_csv(exported, first);
    const auto second = load_experimental(temp_file("rand_out.csv", exported.str()), grid);
    CHECK(second == first);
  }
}

TEST_CASE("validate_profile") {
  const GridSpec grid(3.0, 10, 1.0, 1);
  std::vector<double> v(11, 0.5);
  v[10] = 0.1;
  CHECK_THROWS_AS(validate_profile(MeshProfile(grid, v)), std::invalid_argument);
  v[10] = 0.0;
  v[5] = -0.01;
  const auto warnings = validate_profile(MeshProfile(grid, v));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].message.find("negative") != std::string::npos);
  v[5] = 0.5;
  v[0] = 5.0;  // |D+ w_0| = 45 > 10 du
  const auto neumann = validate_profile(MeshProfile(grid, v));
  REQUIRE(neumann.size() == 1);
  CHECK(neumann[0].message.find("Neumann") != std::string::npos);
}

TEST_CASE("build_profile dispatch") {
  const GridSpec grid(3.0, 20, 1.0, 1);
  ProfileSpec spec;
  CHECK(build_profile(spec, grid) == inflection_profile(grid, 0.7, 2.0));
  spec.kind = ProfileKind::file;
  CHECK_THROWS_AS(build_profile(spec, grid), std::invalid_argument);
  spec.kind = ProfileKind::experimental;
  CHECK_THROWS_AS(build_profile(spec, grid), std::invalid_argument);
  CHECK(parse_profile_kind("bump") == ProfileKind::bump);
  CHECK_THROWS(parse_profile_kind("square"));
}

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cgc/gauss_maps.hpp"

namespace cgc {

enum class BoundaryMode { Heuristic, UmbilicExact, File };
enum class JobMode { Forward, Converse };

// Flat `key = value` job description. Values are JSON literals (numbers,
// booleans, [re, im] pairs, lists); bare words are taken as strings.
//
//   K = -0.75                       curvature, in (-1,0) or (0,inf)
//   Q = [[0,0],[0.1,0]]             coefficients a_0, a_1, ... as [re, im]
//   N = 65                          nodes per side, odd >= 9
//   radius = 0.8                    square inscribed in |z| <= radius (alias r)
//   rect = [-0.5,0.5,-0.5,0.5]      explicit rectangle instead of radius
//   domain = disk | plane
//   lambdas = [[1,0],[0,1]]         spectral parameters
//   at_lambda0 = true               also evaluate at lambda0 e^{i theta}
//   theta = 0
//   family = 8                      associated-family size
//   bc = heuristic | umbilic-exact | file
//   bc_file = boundary.csv          u-CSV layout
//   out = out
//   tol.gauss = 1e-10               Newton residual
//   tol.max_iterations = 100
//   tol.fd = 500                    finite-difference checks pass below tol.fd h^2
//   mode = forward | converse
//   lambda1 = [1.7320508075688772, 0]
//   target = H2 | S2
struct JobConfig {
  double K = -0.75;
  std::vector<Complex> q_coefficients{Complex(0.0)};
  QDomain domain = QDomain::UnitDisk;
  std::optional<double> radius;
  std::optional<std::array<double, 4>> rect;
  int N = 65;
  std::vector<Complex> lambdas;
  bool at_lambda0 = false;
  double theta = 0.0;
  int family = 8;
  BoundaryMode bc = BoundaryMode::Heuristic;
  std::string bc_file;
  std::string out = "out";
  double gauss_tolerance = 1e-10;
  int max_iterations = 100;
  double fd_tolerance = 500.0;
  JobMode mode = JobMode::Forward;
  Complex lambda1{0.0};
  MapTarget target = MapTarget::H2;

  Grid grid() const;
  QDiff q() const;
};

// ParseError for malformed lines or values, ValidationError naming the key.
JobConfig parse_config(std::string_view text);
JobConfig load_config(const std::string& path);
// Re-checks invariants after command-line overrides.
void validate_config(const JobConfig& cfg);

}  // namespace cgc

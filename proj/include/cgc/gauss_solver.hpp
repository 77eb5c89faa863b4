#pragma once

#include <optional>
#include <vector>

#include "cgc/grid.hpp"
#include "cgc/quadratic_differential.hpp"

namespace cgc {

// Conformal factor u of the data I = Q dz^2 + (e^u + |Q|^2 e^-u)|dz|^2 + conj(Q) dzbar^2
// for curvature K = -1 + sigma^2.
struct MetricField {
  RealField u;
  double K = 0.0;
  double sigma = 0.0;

  MetricField(RealField field, double curvature);
  const Grid& grid() const { return u.grid(); }
};

// Throws OutOfRange unless K is in (-1, 0) or (0, inf).
void check_curvature(double K, const char* module);

// Dirichlet values; only boundary nodes are read.
struct BoundaryData {
  RealField values;
};

BoundaryData umbilic_trace(double K, const Grid& grid);
// log(rho_K(z) + |Q(z)|) with rho_K the umbilic metric of curvature K
// (hyperbolic for K < 0, spherical for K > 0); without the rho factor
// when the grid leaves the unit disk.
BoundaryData heuristic_boundary(const QDiff& q, double K, const Grid& grid);

// R = (1/4) Lap_h u + (K/2)(e^u - |Q|^2 e^-u) at interior nodes, 0 on the boundary.
RealField gauss_residual(const MetricField& metric, const QDiff& q);
RealField gauss_residual(const RealField& u, double K, const RealField& abs_q_sq);

struct SolveOptions {
  double tolerance = 1e-10;
  int max_iterations = 100;
  int max_halvings = 30;
  std::optional<RealField> initial_guess;
};

struct SolveReport {
  int iterations = 0;
  // max |R| before each Newton step and after the last one.
  std::vector<double> residual_history;
  int halvings = 0;
  bool used_direct_solver = false;
};

MetricField solve_gauss(const QDiff& q, double K, const Grid& grid, const BoundaryData& bc,
                        const SolveOptions& options = {}, SolveReport* report = nullptr);

namespace detail {
// Newton core without the public curvature-range check; K only needs to be
// nonzero. Used by the converse construction, whose seeds solve the K = -1 / +1
// normalized harmonic-map equation.
RealField newton_solve(const RealField& abs_q_sq, double K, const BoundaryData& bc,
                       const SolveOptions& options, SolveReport* report);
}  // namespace detail

// u = log((4/|K|)(1-|z|^2)^-2), the complete metric of curvature K on the disk.
MetricField umbilic_seed(double K, const Grid& grid);
// u = log((4/K)(1+|z|^2)^-2), the round metric of curvature K > 0.
MetricField spherical_seed(double K, const Grid& grid);

struct OdeProfile {
  std::vector<double> x;
  std::vector<double> u;
  double residual = 0.0;
  int iterations = 0;
};

// (1/4) u'' + (K/2)(e^u - c^2 e^-u) = 0 on [x_min, x_max] with u given at both
// ends, collocated on `nodes` equally spaced points (3-point second difference).
OdeProfile ode_oracle(double c, double K, double x_min, double x_max, int nodes, double u_left,
                      double u_right, double tolerance = 1e-10);

// (1/4) Lap_h u + K sinh u: the Gauss equation in the coordinate where Q = 1.
RealField sinh_normal_residual(const MetricField& metric);

}  // namespace cgc

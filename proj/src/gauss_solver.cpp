#include "cgc/gauss_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "cgc/error.hpp"

namespace cgc {

MetricField::MetricField(RealField field, double curvature)
    : u(std::move(field)), K(curvature), sigma(std::sqrt(1.0 + curvature)) {}

void check_curvature(double K, const char* module) {
  if (!(K > -1.0) || K == 0.0 || !std::isfinite(K)) {
    std::ostringstream os;
    os << "K = " << K << " outside (-1,0) u (0,inf)";
    throw Error(ErrorCode::OutOfRange, module, os.str());
  }
}

namespace {

RealField abs_q_squared(const QDiff& q, const Grid& grid) {
  const ComplexField qs = sample_q(q, grid);
  RealField out(grid);
  for (int k = 0; k < grid.size(); ++k) out.values()[k] = std::norm(qs.values()[k]);
  return out;
}

double umbilic_density(double K, Complex z) {
  if (K < 0.0) {
    const double w = 1.0 - std::norm(z);
    return 4.0 / (-K * w * w);
  }
  const double w = 1.0 + std::norm(z);
  return 4.0 / (K * w * w);
}

}  // namespace

BoundaryData umbilic_trace(double K, const Grid& grid) {
  return {umbilic_seed(K, grid).u};
}

BoundaryData heuristic_boundary(const QDiff& q, double K, const Grid& grid) {
  const bool in_disk = grid.max_modulus() < 1.0;
  const ComplexField qs = sample_q(q, grid);
  RealField values(grid);
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      const double rho = in_disk ? umbilic_density(K, grid.z(i, j)) : 4.0 / std::abs(K);
      values(i, j) = std::log(rho + std::abs(qs(i, j)));
    }
  return {std::move(values)};
}

RealField gauss_residual(const RealField& u, double K, const RealField& abs_q_sq) {
  const Grid& g = u.grid();
  RealField r = laplacian(u);
  for (int j = 1; j < g.ny() - 1; ++j)
    for (int i = 1; i < g.nx() - 1; ++i) {
      const double e = std::exp(u(i, j));
      r(i, j) = 0.25 * r(i, j) + 0.5 * K * (e - abs_q_sq(i, j) / e);
    }
  return r;
}

RealField gauss_residual(const MetricField& metric, const QDiff& q) {
  return gauss_residual(metric.u, metric.K, abs_q_squared(q, metric.grid()));
}

namespace detail {

namespace {

struct InteriorIndex {
  int nx, ny;
  int operator()(int i, int j) const { return (j - 1) * (nx - 2) + (i - 1); }
  int size() const { return (nx - 2) * (ny - 2); }
};

double l2(const Eigen::VectorXd& v) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) s += v[k] * v[k];
  return std::sqrt(s);
}

double linf(const Eigen::VectorXd& v) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) s = std::max(s, std::abs(v[k]));
  return s;
}

}  // namespace

RealField newton_solve(const RealField& abs_q_sq, double K, const BoundaryData& bc,
                       const SolveOptions& options, SolveReport* report) {
  const Grid& g = abs_q_sq.grid();
  const InteriorIndex idx{g.nx(), g.ny()};
  const int n = idx.size();
  const double inv_h2 = 1.0 / (g.h() * g.h());

  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (g.on_boundary(i, j) && !std::isfinite(bc.values(i, j)))
        throw Error(ErrorCode::NonConvergence, "gauss_solver", "non-finite boundary value", {{i, j}});

  RealField u = options.initial_guess ? *options.initial_guess : bc.values;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (g.on_boundary(i, j)) u(i, j) = bc.values(i, j);

  auto residual = [&](const RealField& field) {
    Eigen::VectorXd r(n);
    for (int j = 1; j < g.ny() - 1; ++j)
      for (int i = 1; i < g.nx() - 1; ++i) {
        const double lap = (field(i + 1, j) + field(i - 1, j) + field(i, j + 1) + field(i, j - 1) -
                            4.0 * field(i, j)) * inv_h2;
        const double e = std::exp(field(i, j));
        r[idx(i, j)] = 0.25 * lap + 0.5 * K * (e - abs_q_sq(i, j) / e);
      }
    return r;
  };

  SolveReport local;
  SolveReport& rep = report ? *report : local;
  rep = SolveReport{};

  Eigen::VectorXd r = residual(u);
  rep.residual_history.push_back(linf(r));

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(5 * static_cast<std::size_t>(n));

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (rep.residual_history.back() <= options.tolerance) {
      rep.iterations = iter;
      return u;
    }

    // Jacobian J = (1/4) Lap_h + diag((K/2)(e^u + |Q|^2 e^-u)), assembled as -J
    // so that the K < 0 system is symmetric positive definite.
    triplets.clear();
    for (int j = 1; j < g.ny() - 1; ++j)
      for (int i = 1; i < g.nx() - 1; ++i) {
        const int row = idx(i, j);
        const double e = std::exp(u(i, j));
        triplets.emplace_back(row, row, inv_h2 - 0.5 * K * (e + abs_q_sq(i, j) / e));
        if (i > 1) triplets.emplace_back(row, idx(i - 1, j), -0.25 * inv_h2);
        if (i < g.nx() - 2) triplets.emplace_back(row, idx(i + 1, j), -0.25 * inv_h2);
        if (j > 1) triplets.emplace_back(row, idx(i, j - 1), -0.25 * inv_h2);
        if (j < g.ny() - 2) triplets.emplace_back(row, idx(i, j + 1), -0.25 * inv_h2);
      }
    Eigen::SparseMatrix<double> neg_jac(n, n);
    neg_jac.setFromTriplets(triplets.begin(), triplets.end());

    // -J delta = r
    Eigen::VectorXd delta;
    bool solved = false;
    if (K < 0.0) {
      Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                               Eigen::DiagonalPreconditioner<double>>
          cg;
      cg.setTolerance(1e-13);
      cg.setMaxIterations(4 * n);
      cg.compute(neg_jac);
      delta = cg.solve(r);
      solved = cg.info() == Eigen::Success;
    }
    if (!solved) {
      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
      lu.compute(neg_jac);
      if (lu.info() != Eigen::Success)
        throw Error(ErrorCode::NonConvergence, "gauss_solver", "singular Newton Jacobian");
      delta = lu.solve(r);
      rep.used_direct_solver = true;
    }

    // Armijo backtracking on the residual 2-norm.
    const double norm0 = l2(r);
    double step = 1.0;
    bool accepted = false;
    RealField trial(g);
    Eigen::VectorXd r_trial;
    for (int halving = 0; halving <= options.max_halvings; ++halving) {
      trial = u;
      for (int j = 1; j < g.ny() - 1; ++j)
        for (int i = 1; i < g.nx() - 1; ++i) trial(i, j) += step * delta[idx(i, j)];
      r_trial = residual(trial);
      const double norm1 = l2(r_trial);
      if (std::isfinite(norm1) && norm1 <= (1.0 - 1e-4 * step) * norm0) {
        accepted = true;
        rep.halvings += halving;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      rep.iterations = iter + 1;
      std::ostringstream os;
      os << "line search failed at iteration " << iter << ", max|R| = " << rep.residual_history.back();
      throw Error(ErrorCode::NonConvergence, "gauss_solver", os.str());
    }
    u = std::move(trial);
    r = std::move(r_trial);
    rep.residual_history.push_back(linf(r));
  }

  rep.iterations = options.max_iterations;
  if (rep.residual_history.back() <= options.tolerance) return u;
  std::ostringstream os;
  os << "iteration cap " << options.max_iterations << " reached, max|R| = " << rep.residual_history.back();
  throw Error(ErrorCode::NonConvergence, "gauss_solver", os.str());
}

}  // namespace detail

MetricField solve_gauss(const QDiff& q, double K, const Grid& grid, const BoundaryData& bc,
                        const SolveOptions& options, SolveReport* report) {
  check_curvature(K, "gauss_solver");
  const RealField abs_q_sq = abs_q_squared(q, grid);

  SolveOptions opts = options;
  if (!opts.initial_guess) opts.initial_guess = heuristic_boundary(q, K, grid).values;
  RealField u = detail::newton_solve(abs_q_sq, K, bc, opts, report);

  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      if (!(std::exp(2.0 * u(i, j)) > abs_q_sq(i, j))) {
        std::ostringstream os;
        os << "e^{2u} = " << std::exp(2.0 * u(i, j)) << " <= |Q|^2 = " << abs_q_sq(i, j);
        throw Error(ErrorCode::ImmersionViolated, "gauss_solver", os.str(), {{i, j}});
      }
  return MetricField(std::move(u), K);
}

MetricField umbilic_seed(double K, const Grid& grid) {
  if (!(K > -1.0 && K < 0.0))
    throw Error(ErrorCode::OutOfRange, "gauss_solver", "umbilic seed needs -1 < K < 0");
  if (grid.max_modulus() >= 1.0)
    throw Error(ErrorCode::DomainViolation, "gauss_solver", "grid touches |z| = 1");
  return MetricField(sample<double>(grid,
                                    [K](double x, double y) {
                                      return std::log(umbilic_density(K, {x, y}));
                                    }),
                     K);
}

MetricField spherical_seed(double K, const Grid& grid) {
  if (!(K > 0.0)) throw Error(ErrorCode::OutOfRange, "gauss_solver", "spherical seed needs K > 0");
  return MetricField(sample<double>(grid,
                                    [K](double x, double y) {
                                      return std::log(umbilic_density(K, {x, y}));
                                    }),
                     K);
}

OdeProfile ode_oracle(double c, double K, double x_min, double x_max, int nodes, double u_left,
                      double u_right, double tolerance) {
  if (nodes < 3 || !(x_max > x_min))
    throw Error(ErrorCode::NonConvergence, "gauss_solver", "ode_oracle needs >= 3 nodes on a non-empty range");
  const double h = (x_max - x_min) / (nodes - 1);
  const double inv_h2 = 1.0 / (h * h);
  const double c2 = c * c;
  OdeProfile p;
  p.x.resize(nodes);
  p.u.resize(nodes);
  for (int k = 0; k < nodes; ++k) {
    p.x[k] = x_min + k * h;
    const double t = static_cast<double>(k) / (nodes - 1);
    p.u[k] = (1.0 - t) * u_left + t * u_right;
  }

  const int m = nodes - 2;
  auto residual = [&](const std::vector<double>& u, std::vector<double>& r) {
    double worst = 0.0;
    for (int k = 1; k <= m; ++k) {
      const double e = std::exp(u[k]);
      r[k - 1] = 0.25 * (u[k + 1] - 2.0 * u[k] + u[k - 1]) * inv_h2 + 0.5 * K * (e - c2 / e);
      worst = std::max(worst, std::abs(r[k - 1]));
    }
    return worst;
  };

  std::vector<double> r(m), diag(m), rhs(m), delta(m), cprime(m), trial;
  double worst = residual(p.u, r);
  for (int iter = 0; iter < 100; ++iter) {
    if (worst <= tolerance) {
      p.residual = worst;
      p.iterations = iter;
      return p;
    }
    // Tridiagonal Jacobian: off-diagonals 1/(4h^2), diagonal -1/(2h^2) + (K/2)(e^u + c^2 e^-u).
    const double off = 0.25 * inv_h2;
    for (int k = 0; k < m; ++k) {
      const double e = std::exp(p.u[k + 1]);
      diag[k] = -0.5 * inv_h2 + 0.5 * K * (e + c2 / e);
      rhs[k] = -r[k];
    }
    // Thomas algorithm.
    cprime[0] = off / diag[0];
    rhs[0] /= diag[0];
    for (int k = 1; k < m; ++k) {
      const double denom = diag[k] - off * cprime[k - 1];
      cprime[k] = off / denom;
      rhs[k] = (rhs[k] - off * rhs[k - 1]) / denom;
    }
    delta[m - 1] = rhs[m - 1];
    for (int k = m - 2; k >= 0; --k) delta[k] = rhs[k] - cprime[k] * delta[k + 1];

    double step = 1.0;
    bool accepted = false;
    std::vector<double> r_trial(m);
    for (int halving = 0; halving <= 30; ++halving) {
      trial = p.u;
      for (int k = 0; k < m; ++k) trial[k + 1] += step * delta[k];
      const double w = residual(trial, r_trial);
      if (std::isfinite(w) && (w < worst || w <= tolerance)) {
        accepted = true;
        worst = w;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) throw Error(ErrorCode::NonConvergence, "gauss_solver", "ode_oracle line search failed");
    p.u = trial;
    r = r_trial;
  }
  if (worst > tolerance) throw Error(ErrorCode::NonConvergence, "gauss_solver", "ode_oracle iteration cap");
  p.residual = worst;
  p.iterations = 100;
  return p;
}

RealField sinh_normal_residual(const MetricField& metric) {
  const Grid& g = metric.grid();
  RealField r = laplacian(metric.u);
  for (int j = 1; j < g.ny() - 1; ++j)
    for (int i = 1; i < g.nx() - 1; ++i)
      r(i, j) = 0.25 * r(i, j) + metric.K * std::sinh(metric.u(i, j));
  return r;
}

}  // namespace cgc

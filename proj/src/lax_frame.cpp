#include "cgc/lax_frame.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "cgc/error.hpp"

namespace cgc {

DerivativeField derivative_field(const MetricField& metric) {
  return {d_z4(metric.u), 0.5 * (1.0 + metric.sigma), 0.5 * (1.0 - metric.sigma)};
}

ComplexField compute_p(const RealField& u, const ComplexField& q_samples) {
  const Grid& g = u.grid();
  const ComplexField dbar_q = d_zbar(q_samples);
  ComplexField conj_q(g);
  for (int k = 0; k < g.size(); ++k) conj_q.values()[k] = std::conj(q_samples.values()[k]);
  const ComplexField d_conj_q = d_z(conj_q);

  ComplexField p(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double e = std::exp(u(i, j));
      const Complex q = q_samples(i, j);
      const double denom = 2.0 * (e - std::norm(q) / e);
      if (!(denom > 0.0)) {
        std::ostringstream os;
        os << "e^u - |Q|^2 e^-u = " << denom / 2.0;
        throw Error(ErrorCode::DegenerateDenominator, "lax_frame", os.str(), {{i, j}});
      }
      p(i, j) = (-dbar_q(i, j) + q * d_conj_q(i, j) / e) / denom;
    }
  return p;
}

ExactMetric exact_umbilic(double K) {
  const double c = std::log(4.0 / std::abs(K));
  return {[c](Complex z) { return c - 2.0 * std::log(1.0 - std::norm(z)); },
          [](Complex z) { return 2.0 * std::conj(z) / (1.0 - std::norm(z)); }};
}

ExactMetric exact_spherical(double K) {
  const double c = std::log(4.0 / K);
  return {[c](Complex z) { return c - 2.0 * std::log(1.0 + std::norm(z)); },
          [](Complex z) { return -2.0 * std::conj(z) / (1.0 + std::norm(z)); }};
}

UVPair uv_at(double u, Complex du, Complex q, Complex p, double sigma, Complex lambda) {
  const double X = 0.5 * (1.0 + sigma);
  const double Y = 0.5 * (1.0 - sigma);
  const double a = std::exp(0.5 * u);
  const double b = 1.0 / a;
  const C2x2& e1 = basis::e1();
  const C2x2& e2h = basis::e2_hat();
  const C2x2& e3h = basis::e3_hat();
  C2x2 U = (0.25 * du + p) * e1 + (X / lambda) * (a * e2h + (q * b) * e3h);
  C2x2 V = -(0.25 * std::conj(du) + std::conj(p)) * e1 + (Y * lambda) * ((std::conj(q) * b) * e2h + a * e3h);
  return {U, V};
}

namespace {
void check_lambda(Complex lambda) {
  if (lambda == Complex(0.0)) throw Error(ErrorCode::ZeroLambda, "lax_frame", "spectral parameter is 0");
}
}  // namespace

MaurerCartanData build_uv(const MetricField& metric, const DerivativeField& d, const QDiff& q,
                          Complex lambda) {
  check_lambda(lambda);
  const Grid& g = metric.grid();
  const ComplexField qs = sample_q(q, g);
  MaurerCartanData mc{MatrixField(g), MatrixField(g), lambda, true, {}};
  for (int k = 0; k < g.size(); ++k) {
    auto [U, V] = uv_at(metric.u.values()[k], d.du.values()[k], qs.values()[k], 0.0, metric.sigma, lambda);
    mc.U.values()[k] = U;
    mc.V.values()[k] = V;
  }
  return mc;
}

MaurerCartanData build_uv_general(const MetricField& metric, const DerivativeField& d,
                                  const ComplexField& q_samples, const ComplexField& p,
                                  Complex lambda) {
  check_lambda(lambda);
  const Grid& g = metric.grid();
  MaurerCartanData mc{MatrixField(g), MatrixField(g), lambda, false, {}};
  for (int k = 0; k < g.size(); ++k) {
    auto [U, V] = uv_at(metric.u.values()[k], d.du.values()[k], q_samples.values()[k], p.values()[k],
                        metric.sigma, lambda);
    mc.U.values()[k] = U;
    mc.V.values()[k] = V;
  }
  return mc;
}

MaurerCartanData build_uv_exact(const ExactMetric& metric, double K, const QDiff& q,
                                const Grid& grid, Complex lambda) {
  check_lambda(lambda);
  check_grid_in_domain(q, grid);
  const double sigma = std::sqrt(1.0 + K);
  auto eval = [metric, q, sigma, lambda](double x, double y) {
    const Complex z(x, y);
    return uv_at(metric.u(z), metric.du(z), eval_q(q, z), 0.0, sigma, lambda);
  };
  MaurerCartanData mc{MatrixField(grid), MatrixField(grid), lambda, true, eval};
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      auto [U, V] = eval(grid.x(i), grid.y(j));
      mc.U(i, j) = U;
      mc.V(i, j) = V;
    }
  return mc;
}

RealField zero_curvature_residual(const MaurerCartanData& mc) {
  const Grid& g = mc.U.grid();
  const MatrixField dbar_u = d_zbar(mc.U);
  const MatrixField d_v = d_z(mc.V);
  RealField out(g);
  for (int j = 1; j < g.ny() - 1; ++j)
    for (int i = 1; i < g.nx() - 1; ++i) {
      const C2x2& U = mc.U(i, j);
      const C2x2& V = mc.V(i, j);
      out(i, j) = (dbar_u(i, j) - d_v(i, j) + V * U - U * V).norm();
    }
  return out;
}

namespace {

struct Integrator {
  const MaurerCartanData& mc;
  double h;
  double max_drift = 0.0;

  // Coefficient of d/dx (axis 0) or d/dy (axis 1) at a node or between nodes.
  C2x2 coefficient(const UVPair& uv, int axis) const {
    return axis == 0 ? C2x2(uv.first + uv.second) : C2x2(kI * (uv.first - uv.second));
  }
  UVPair node(int i, int j) const { return {mc.U(i, j), mc.V(i, j)}; }
  UVPair midpoint(int i0, int j0, int i1, int j1) const {
    if (mc.exact) {
      const Grid& g = mc.U.grid();
      return mc.exact(0.5 * (g.x(i0) + g.x(i1)), 0.5 * (g.y(j0) + g.y(j1)));
    }
    return {0.5 * (mc.U(i0, j0) + mc.U(i1, j1)), 0.5 * (mc.V(i0, j0) + mc.V(i1, j1))};
  }

  // One RK4 step for Psi' = Psi A from node (i0,j0) to its neighbour (i1,j1).
  C2x2 step(const C2x2& psi, int i0, int j0, int i1, int j1) {
    const int axis = (i0 != i1) ? 0 : 1;
    const double s = ((axis == 0 ? i1 - i0 : j1 - j0) > 0 ? 1.0 : -1.0) * h;
    const C2x2 a0 = coefficient(node(i0, j0), axis);
    const C2x2 am = coefficient(midpoint(i0, j0, i1, j1), axis);
    const C2x2 a1 = coefficient(node(i1, j1), axis);
    const C2x2 k1 = psi * a0;
    const C2x2 k2 = (psi + 0.5 * s * k1) * am;
    const C2x2 k3 = (psi + 0.5 * s * k2) * am;
    const C2x2 k4 = (psi + s * k3) * a1;
    C2x2 next = psi + (s / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const Complex det = next.determinant();
    max_drift = std::max(max_drift, std::abs(det - 1.0));
    next /= std::sqrt(det);
    return next;
  }
};

}  // namespace

FrameField integrate_frame(const MaurerCartanData& mc, PathOrder order) {
  const Grid& g = mc.U.grid();
  FrameField frame{MatrixField(g, C2x2::Identity()), mc.lambda, 0.0, 0.0, {}};
  Integrator rk{mc, g.h()};
  MatrixField& psi = frame.psi;
  const int bi = g.base_i();
  const int bj = g.base_j();
  psi(bi, bj) = C2x2::Identity();

  if (order == PathOrder::RowsThenColumns) {
    for (int i = bi + 1; i < g.nx(); ++i) psi(i, bj) = rk.step(psi(i - 1, bj), i - 1, bj, i, bj);
    for (int i = bi - 1; i >= 0; --i) psi(i, bj) = rk.step(psi(i + 1, bj), i + 1, bj, i, bj);
    for (int i = 0; i < g.nx(); ++i) {
      for (int j = bj + 1; j < g.ny(); ++j) psi(i, j) = rk.step(psi(i, j - 1), i, j - 1, i, j);
      for (int j = bj - 1; j >= 0; --j) psi(i, j) = rk.step(psi(i, j + 1), i, j + 1, i, j);
    }
  } else {
    for (int j = bj + 1; j < g.ny(); ++j) psi(bi, j) = rk.step(psi(bi, j - 1), bi, j - 1, bi, j);
    for (int j = bj - 1; j >= 0; --j) psi(bi, j) = rk.step(psi(bi, j + 1), bi, j + 1, bi, j);
    for (int j = 0; j < g.ny(); ++j) {
      for (int i = bi + 1; i < g.nx(); ++i) psi(i, j) = rk.step(psi(i - 1, j), i - 1, j, i, j);
      for (int i = bi - 1; i >= 0; --i) psi(i, j) = rk.step(psi(i + 1, j), i + 1, j, i, j);
    }
  }

  frame.max_det_drift = rk.max_drift;
  frame.det_drift_per_length = rk.max_drift / g.h();
  if (frame.max_det_drift > 1e-6) {
    std::ostringstream os;
    os << "det drift " << frame.max_det_drift << " per step exceeds 1e-6";
    frame.warnings.push_back(os.str());
  }
  return frame;
}

double reality_residual(const MaurerCartanData& mc, RealForm target) {
  const C2x2& e1 = basis::e1();
  double worst = 0.0;
  auto u = mc.U.values();
  auto v = mc.V.values();
  for (std::size_t k = 0; k < u.size(); ++k) {
    const C2x2 ustar = u[k].adjoint();
    const C2x2 r = target == RealForm::SU11 ? C2x2(v[k] + e1 * ustar * e1) : C2x2(v[k] + ustar);
    worst = std::max(worst, r.norm());
  }
  return worst;
}

double frame_unitarity_residual(const FrameField& frame, RealForm target) {
  const C2x2& e1 = basis::e1();
  double worst = 0.0;
  for (const C2x2& psi : frame.psi.values()) {
    const C2x2 r = target == RealForm::SU11 ? C2x2(psi.adjoint() * e1 * psi - e1)
                                            : C2x2(psi.adjoint() * psi - C2x2::Identity());
    worst = std::max(worst, r.norm());
  }
  return worst;
}

double det_residual(const FrameField& frame) {
  double worst = 0.0;
  for (const C2x2& psi : frame.psi.values()) worst = std::max(worst, std::abs(psi.determinant() - 1.0));
  return worst;
}

double frame_difference(const FrameField& a, const FrameField& b) {
  double worst = 0.0;
  auto x = a.psi.values();
  auto y = b.psi.values();
  for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, (x[k] - y[k]).norm());
  return worst;
}

double twist_residual(const MaurerCartanData& at_lambda, const MaurerCartanData& at_minus_lambda) {
  const C2x2& e1 = basis::e1();
  double worst = 0.0;
  for (int k = 0; k < at_lambda.U.grid().size(); ++k) {
    const double ru = (e1 * at_lambda.U.values()[k] * e1 - at_minus_lambda.U.values()[k]).norm();
    const double rv = (e1 * at_lambda.V.values()[k] * e1 - at_minus_lambda.V.values()[k]).norm();
    worst = std::max(worst, ru + rv);
  }
  return worst;
}

}  // namespace cgc

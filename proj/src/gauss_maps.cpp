#include "cgc/gauss_maps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <limits>

#include <Eigen/Geometry>
#include <Eigen/LU>

#include "cgc/error.hpp"

namespace cgc {

double lambda0(double K) {
  check_curvature(K, "gauss_maps");
  const double sigma = std::sqrt(1.0 + K);
  // |1 - sigma| = |K| / (1 + sigma) avoids cancellation near K = 0
  const double by_sigma = (1.0 + sigma) / std::sqrt(std::abs(K));
  const double by_angle =
      K < 0.0 ? std::exp(std::acosh(std::sqrt(-1.0 / K))) : std::exp(std::asinh(std::sqrt(1.0 / K)));
  // Relative once the modulus itself is large (K near 0).
  if (std::abs(by_sigma - by_angle) > 1e-12 * std::max(1.0, by_sigma)) {
    std::ostringstream os;
    os.precision(17);
    os << "lambda0 formulas disagree: " << by_sigma << " vs " << by_angle;
    throw Error(ErrorCode::ValidationError, "gauss_maps", os.str());
  }
  return by_angle;
}

LagrangianMapField lagrangian_map(const FrameField& frame, MapTarget target) {
  const Grid& g = frame.psi.grid();
  LagrangianMapField out{MatrixField(g), frame.lambda, target, std::nullopt, std::nullopt};
  const C2x2 ie1 = kI * basis::e1();
  for (int k = 0; k < g.size(); ++k) {
    const C2x2& psi = frame.psi.values()[k];
    const C2x2 L = psi * ie1 * psi.inverse();
    out.L.values()[k] = L;
    out.trace_residual = std::max(out.trace_residual, std::abs(L.trace()));
    out.square_residual = std::max(out.square_residual, (L * L + C2x2::Identity()).norm());
  }
  if (target == MapTarget::H2) {
    ComplexField w(g);
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) {
        try {
          w(i, j) = su11_disk(out.L(i, j));
        } catch (const Error& e) {
          throw Error(e.code(), "gauss_maps", e.what(), {{i, j}});
        }
      }
    out.disk = std::move(w);
  } else if (target == MapTarget::S2) {
    Field<SpherePoint> s(g);
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) {
        try {
          const auto p = su2_sphere(out.L(i, j));
          s(i, j) = SpherePoint(p[0], p[1], p[2]);
        } catch (const Error& e) {
          throw Error(e.code(), "gauss_maps", e.what(), {{i, j}});
        }
      }
    out.sphere = std::move(s);
  }
  return out;
}

double min_jacobian(const LagrangianMapField& map, int ring) {
  const Grid& g = map.L.grid();
  RealField jac(g);
  if (map.disk) {
    const ComplexField wx = diff_x(*map.disk);
    const ComplexField wy = diff_y(*map.disk);
    for (int k = 0; k < g.size(); ++k) {
      const Complex a = wx.values()[k];
      const Complex b = wy.values()[k];
      jac.values()[k] = std::abs(a.real() * b.imag() - a.imag() * b.real());
    }
  } else if (map.sphere) {
    const Field<SpherePoint> sx = diff_x(*map.sphere);
    const Field<SpherePoint> sy = diff_y(*map.sphere);
    for (int k = 0; k < g.size(); ++k)
      jac.values()[k] = std::abs(map.sphere->values()[k].dot(sx.values()[k].cross(sy.values()[k])));
  } else {
    throw Error(ErrorCode::ValidationError, "gauss_maps", "Jacobian needs an H2 or S2 projection");
  }
  double worst = std::numeric_limits<double>::infinity();
  for (int j = ring; j < g.ny() - ring; ++j)
    for (int i = ring; i < g.nx() - ring; ++i) worst = std::min(worst, jac(i, j));
  return worst;
}

EnergyResult energy_check(const LagrangianMapField& map, const RealField& u,
                          const ComplexField& q_samples, double K) {
  if (map.target == MapTarget::Generic)
    throw Error(ErrorCode::ValidationError, "gauss_maps", "energy check needs an H2 or S2 target");
  const Grid& g = map.L.grid();
  const bool h2 = map.target == MapTarget::H2;
  const double theta = std::arg(map.lambda);
  const Complex phase = std::polar(1.0, -2.0 * theta);
  const MatrixField dL = d_z(map.L);
  const MatrixField dbL = d_zbar(map.L);
  EnergyResult out{ComplexField(g), ComplexField(g), RealField(g), RealField(g)};
  for (int k = 0; k < g.size(); ++k) {
    const C2x2& a = dL.values()[k];
    const C2x2& b = dbL.values()[k];
    const Complex dd = h2 ? killing_su11(a, a) : killing_su2(a, a);
    const Complex ddbar = h2 ? killing_su11(a, b) : killing_su2(a, b);
    const double e = std::exp(u.values()[k]);
    const Complex q = q_samples.values()[k];
    const double energy = 0.5 * K * (e + std::norm(q) / e);
    out.dd.values()[k] = dd;
    out.ddbar.values()[k] = ddbar;
    out.dd_residual.values()[k] = std::abs(dd + K * phase * q);
    out.ddbar_residual.values()[k] = std::abs(ddbar - (h2 ? -energy : energy));
  }
  return out;
}

namespace {

C2x2 off_diagonal(const C2x2& m) {
  C2x2 r = m;
  r(0, 0) = 0.0;
  r(1, 1) = 0.0;
  return r;
}

}  // namespace

HarmonicityResult harmonicity_residual(const MaurerCartanData& mc, const RealField& u,
                                       const ComplexField& q_samples, double sigma) {
  const Grid& g = mc.U.grid();
  MatrixField P(g), R(g);
  for (int k = 0; k < g.size(); ++k) {
    P.values()[k] = off_diagonal(mc.U.values()[k]);
    R.values()[k] = off_diagonal(mc.V.values()[k]);
  }
  const MatrixField dbP = d_zbar(P);
  const MatrixField dR = d_z(R);
  const double XY = 0.25 * (1.0 - sigma * sigma);
  HarmonicityResult out{RealField(g)};
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const C2x2& U = mc.U(i, j);
      const C2x2& V = mc.V(i, j);
      const C2x2& p = P(i, j);
      const C2x2& r = R(i, j);
      const C2x2 bracket = p * r - r * p;
      out.bracket_p = std::max(out.bracket_p, off_diagonal(bracket).norm());
      const double e = std::exp(u(i, j));
      const double expected = XY * (e - std::norm(q_samples(i, j)) / e);
      out.bracket_k_mismatch = std::max(out.bracket_k_mismatch, std::abs(bracket(0, 0) - expected));
      if (g.on_boundary(i, j)) continue;
      out.two_form(i, j) = (dbP(i, j) + dR(i, j) + U * r - r * U + V * p - p * V).norm();
    }
  return out;
}

double seed_curvature(MapTarget target) {
  if (target == MapTarget::Generic)
    throw Error(ErrorCode::ValidationError, "gauss_maps", "seed target must be H2 or S2");
  return target == MapTarget::H2 ? -1.0 : 1.0;
}

HarmonicSeed solve_seed(const QDiff& q_hat, MapTarget target, const Grid& grid,
                        const SolveOptions& options) {
  const double K_hat = seed_curvature(target);
  const ComplexField qs = sample_q(q_hat, grid);
  RealField abs_q_sq(grid);
  for (int k = 0; k < grid.size(); ++k) abs_q_sq.values()[k] = std::norm(qs.values()[k]);
  const BoundaryData bc = heuristic_boundary(q_hat, K_hat, grid);
  SolveOptions opts = options;
  if (!opts.initial_guess) opts.initial_guess = bc.values;
  RealField u = detail::newton_solve(abs_q_sq, K_hat, bc, opts, nullptr);
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      if (!(std::exp(2.0 * u(i, j)) > abs_q_sq(i, j)))
        throw Error(ErrorCode::ImmersionViolated, "gauss_maps", "seed is conformal (|Q_hat| >= e^u_hat)",
                    {{i, j}});
  return {std::move(u), q_hat, target};
}

double converse_curvature(double modulus, MapTarget target) {
  const double a = modulus;
  if (target == MapTarget::H2) {
    const double t = 2.0 * a / (a * a + 1.0);
    return -t * t;
  }
  if (target == MapTarget::S2) {
    const double t = 2.0 * a / (a * a - 1.0);
    return t * t;
  }
  throw Error(ErrorCode::ValidationError, "gauss_maps", "converse target must be H2 or S2");
}

ConverseResult converse_rescale(const HarmonicSeed& seed, Complex lambda1) {
  const double a = std::abs(lambda1);
  if (std::abs(a - 1.0) <= 1e-12)
    throw Error(ErrorCode::OnUnitCircle, "gauss_maps", "|lambda1| = 1 gives no rescaling");
  if (a < 1.0) throw Error(ErrorCode::OutOfRange, "gauss_maps", "converse needs |lambda1| > 1");
  const double c = seed.target == MapTarget::H2 ? (1.0 + a * a) / (2.0 * a) : (1.0 - a * a) / (2.0 * a);
  RealField u = seed.u_hat;
  for (double& v : u.values()) v += 2.0 * std::log(std::abs(c));
  ConverseResult out{std::move(u), seed.q_hat.scaled(c * c), converse_curvature(a, seed.target), c, 0.0};
  out.roundtrip = std::abs(lambda0(out.K) - a);
  if (out.roundtrip > 1e-12 * std::max(1.0, a)) {
    std::ostringstream os;
    os.precision(17);
    os << "lambda0(K) = " << lambda0(out.K) << " but |lambda1| = " << a;
    throw Error(ErrorCode::ValidationError, "gauss_maps", os.str());
  }
  return out;
}

MaurerCartanData seed_frame_data(const HarmonicSeed& seed, Complex lambda) {
  if (lambda == Complex(0.0)) throw Error(ErrorCode::ZeroLambda, "gauss_maps", "spectral parameter is 0");
  const double sign = seed.target == MapTarget::H2 ? 1.0 : -1.0;
  const Grid& g = seed.u_hat.grid();
  const ComplexField du = d_z4(seed.u_hat);
  const ComplexField qs = sample_q(seed.q_hat, g);
  const C2x2& e1 = basis::e1();
  MaurerCartanData mc{MatrixField(g), MatrixField(g), lambda, true, {}};
  for (int k = 0; k < g.size(); ++k) {
    const double a = std::exp(0.5 * seed.u_hat.values()[k]);
    const C2x2 P = 0.5 * (a * basis::e2_hat() + (qs.values()[k] / a) * basis::e3_hat());
    mc.U.values()[k] = 0.25 * du.values()[k] * e1 + P / lambda;
    mc.V.values()[k] = -0.25 * std::conj(du.values()[k]) * e1 + (sign * lambda) * C2x2(P.adjoint());
  }
  return mc;
}

LegendrianMapField legendrian_map(const SurfaceData& s) {
  const Grid& g = s.grid();
  const MatrixField df = d_z(s.f);
  LegendrianMapField out{s.f, s.n, RealField(g)};
  for (int k = 0; k < g.size(); ++k)
    out.tangency.values()[k] = std::abs(mink_pairing(df.values()[k], s.n.values()[k]));
  return out;
}

}  // namespace cgc

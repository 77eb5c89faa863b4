#include "cgc/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "cgc/error.hpp"

namespace cgc {

namespace {

C2x2 hermitian_part(const C2x2& m) { return 0.5 * (m + m.adjoint()); }

double pair_real(const C2x2& a, const C2x2& b) { return mink_pairing(a, b).real(); }

Eigen::Vector4d as_vector(const C2x2& m) {
  const MinkVector v = mink_from_herm(HermMatrix::from_matrix(m));
  return {v.x0, v.x1, v.x2, v.x3};
}

}  // namespace

SurfaceData build_surface(const FrameField& frame) {
  const Grid& g = frame.psi.grid();
  SurfaceData s{MatrixField(g), MatrixField(g), frame.lambda};
  const C2x2& e1 = basis::e1();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const C2x2& psi = frame.psi(i, j);
      const C2x2 f = hermitian_part(psi * psi.adjoint());
      const C2x2 n = hermitian_part(psi * e1 * psi.adjoint());
      const double det = f.determinant().real();
      const double tr = f.trace().real();
      if (std::abs(det - 1.0) > 1e-6 || !(tr > 0.0)) {
        std::ostringstream os;
        os << "det f = " << det << ", trace f = " << tr;
        throw Error(ErrorCode::HyperboloidDrift, "surface_builder", os.str(), {{i, j}});
      }
      s.f(i, j) = f;
      s.n(i, j) = n;
      s.det_residual = std::max(s.det_residual, std::abs(det - 1.0));
      s.fn_residual = std::max(s.fn_residual, std::abs(pair_real(f, n)));
      s.nn_residual = std::max(s.nn_residual, std::abs(pair_real(n, n) - 1.0));
    }
  return s;
}

NumericForms fundamental_forms_numeric(const SurfaceData& s) {
  const Grid& g = s.grid();
  const MatrixField fx = diff_x(s.f);
  const MatrixField fy = diff_y(s.f);
  const MatrixField nx = diff_x(s.n);
  const MatrixField ny = diff_y(s.n);
  NumericForms out{ComplexField(g), RealField(g), RealField(g), ComplexField(g), RealField(g),
                   RealMatrixField(g), RealMatrixField(g), RealMatrixField(g)};
  for (int k = 0; k < g.size(); ++k) {
    const C2x2& a = fx.values()[k];
    const C2x2& b = fy.values()[k];
    const C2x2& c = nx.values()[k];
    const C2x2& d = ny.values()[k];
    const C2x2 df = 0.5 * (a - kI * b);
    const C2x2 dbf = 0.5 * (a + kI * b);
    const C2x2 dn = 0.5 * (c - kI * d);
    const C2x2 dbn = 0.5 * (c + kI * d);
    out.Q.values()[k] = mink_pairing(df, df);
    out.ell.values()[k] = mink_pairing(df, dbf).real();
    out.m.values()[k] = -mink_pairing(dbf, dn).real();
    out.Q3.values()[k] = mink_pairing(dn, dn);
    out.ell3.values()[k] = mink_pairing(dn, dbn).real();

    Eigen::Matrix2d I, II, III;
    I << pair_real(a, a), pair_real(a, b), pair_real(a, b), pair_real(b, b);
    const double mixed = -0.5 * (pair_real(a, d) + pair_real(b, c));
    II << -pair_real(a, c), mixed, mixed, -pair_real(b, d);
    III << pair_real(c, c), pair_real(c, d), pair_real(c, d), pair_real(d, d);
    out.I.values()[k] = I;
    out.II.values()[k] = II;
    out.III.values()[k] = III;
  }
  return out;
}

ClosedForms closed_forms(const RealField& u, const ComplexField& q_samples, double sigma) {
  const Grid& g = u.grid();
  ClosedForms c{RealField(g), RealField(g), ComplexField(g), RealField(g), RealField(g), RealField(g)};
  for (int k = 0; k < g.size(); ++k) {
    const double e = std::exp(u.values()[k]);
    const Complex q = q_samples.values()[k];
    const double q2 = std::norm(q);
    c.ell.values()[k] = 0.5 * (e + q2 / e);
    c.m.values()[k] = 0.5 * sigma * (e - q2 / e);
    c.Q3.values()[k] = -sigma * sigma * q;
    c.ell3.values()[k] = sigma * sigma * c.ell.values()[k];
    c.H.values()[k] = sigma * (e * e + q2) / (e * e - q2);
    c.H_printed.values()[k] = 0.5 * c.H.values()[k];
  }
  return c;
}

RealField curvature(const NumericForms& forms) {
  const Grid& g = forms.I.grid();
  RealField K(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double det_i = forms.I(i, j).determinant();
      if (!(det_i > 0.0)) {
        std::ostringstream os;
        os << "det I = " << det_i;
        throw Error(ErrorCode::DegenerateMetric, "surface_builder", os.str(), {{i, j}});
      }
      K(i, j) = -1.0 + forms.II(i, j).determinant() / det_i;
    }
  return K;
}

RealField mean_curvature(const NumericForms& forms) {
  const Grid& g = forms.I.grid();
  RealField H(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const Eigen::Matrix2d& I = forms.I(i, j);
      if (!(I.determinant() > 0.0))
        throw Error(ErrorCode::DegenerateMetric, "surface_builder", "det I <= 0", {{i, j}});
      H(i, j) = 0.5 * (I.inverse() * forms.II(i, j)).trace();
    }
  return H;
}

RealField relation_residual(const NumericForms& forms, const RealField& H, double K) {
  const Grid& g = forms.I.grid();
  RealField r(g);
  for (int k = 0; k < g.size(); ++k)
    r.values()[k] = (forms.III.values()[k] - 2.0 * H.values()[k] * forms.II.values()[k] +
                     (K + 1.0) * forms.I.values()[k])
                        .norm();
  return r;
}

RecoveredQ recover_q(const NumericForms& forms, const ComplexField& q_expected) {
  const Grid& g = forms.Q.grid();
  RecoveredQ out{forms.Q, abs_field(d_zbar(forms.Q)), RealField(g)};
  for (int k = 0; k < g.size(); ++k)
    out.mismatch.values()[k] = std::abs(forms.Q.values()[k] - q_expected.values()[k]);
  return out;
}

FamilyResult associated_family(const std::function<MaurerCartanData(Complex)>& builder, int count,
                               const ComplexField& q_in, int ring) {
  if (count < 1) throw Error(ErrorCode::ValidationError, "surface_builder", "lambda count must be >= 1");
  FamilyResult out;
  for (int k = 0; k < count; ++k) {
    const double t = 2.0 * std::numbers::pi * k / count;
    const Complex lambda = k == 0 ? Complex(1.0) : std::polar(1.0, t);
    SurfaceData surface = build_surface(integrate_frame(builder(lambda)));
    NumericForms forms = fundamental_forms_numeric(surface);
    RealField K_num = curvature(forms);
    out.members.push_back({lambda, std::move(surface), std::move(forms), std::move(K_num)});
  }
  const Grid& g = q_in.grid();
  const FamilyMember& base = out.members.front();
  for (const FamilyMember& m : out.members) {
    const Complex scale = 1.0 / (m.lambda * m.lambda);
    for (int j = ring; j < g.ny() - ring; ++j)
      for (int i = ring; i < g.nx() - ring; ++i) {
        out.II_deviation = std::max(out.II_deviation, (m.forms.II(i, j) - base.forms.II(i, j)).norm());
        out.K_deviation = std::max(out.K_deviation, std::abs(m.K_num(i, j) - base.K_num(i, j)));
        out.Q_mismatch = std::max(out.Q_mismatch, std::abs(m.forms.Q(i, j) - scale * q_in(i, j)));
      }
  }
  return out;
}

RealField weak_metric(const RealField& u, const ComplexField& q_samples) {
  RealField w(u.grid());
  for (int k = 0; k < u.grid().size(); ++k) {
    const double e = std::exp(u.values()[k]);
    w.values()[k] = 2.0 * (e + std::norm(q_samples.values()[k]) / e);
  }
  return w;
}

RealField weak_metric(const MetricField& metric, const QDiff& q) {
  return weak_metric(metric.u, sample_q(q, metric.grid()));
}

RealField weak_metric_residual(const NumericForms& forms, const RealField& coefficient, double K) {
  const Grid& g = forms.I.grid();
  RealField r(g);
  for (int k = 0; k < g.size(); ++k)
    r.values()[k] = (forms.I.values()[k] + forms.III.values()[k] / (1.0 + K) -
                     coefficient.values()[k] * Eigen::Matrix2d::Identity())
                        .norm();
  return r;
}

RadialLength radial_weak_length(const RealField& u, const ComplexField& q_samples, int di, int dj) {
  if ((di == 0 && dj == 0) || std::abs(di) > 1 || std::abs(dj) > 1)
    throw Error(ErrorCode::ValidationError, "surface_builder", "ray direction must be a unit grid step");
  const Grid& g = u.grid();
  const RealField w = weak_metric(u, q_samples);
  const double step = g.h() * std::hypot(di, dj);
  RadialLength out;
  int i = g.base_i();
  int j = g.base_j();
  auto inside = [&](int a, int b) { return a >= 0 && b >= 0 && a < g.nx() && b < g.ny(); };
  while (inside(i + di, j + dj)) {
    out.weak += 0.5 * step * (std::sqrt(w(i, j)) + std::sqrt(w(i + di, j + dj)));
    out.conformal += 0.5 * step * (std::exp(0.5 * u(i, j)) + std::exp(0.5 * u(i + di, j + dj)));
    i += di;
    j += dj;
  }
  out.end_modulus = std::abs(g.z(i, j));
  return out;
}

namespace {

// Bilinear interpolation of a matrix field at (x, y) inside the rectangle.
C2x2 bilinear(const MatrixField& f, double x, double y) {
  const Grid& g = f.grid();
  const double sx = (x - g.x_min()) / g.h();
  const double sy = (y - g.y_min()) / g.h();
  int i = std::clamp(static_cast<int>(std::floor(sx)), 0, g.nx() - 2);
  int j = std::clamp(static_cast<int>(std::floor(sy)), 0, g.ny() - 2);
  const double tx = sx - i;
  const double ty = sy - j;
  return (1 - tx) * (1 - ty) * f(i, j) + tx * (1 - ty) * f(i + 1, j) + (1 - tx) * ty * f(i, j + 1) +
         tx * ty * f(i + 1, j + 1);
}

}  // namespace

EquivarianceResult equivariance_check(const SurfaceData& s, const QDiff& q, int n_fold) {
  if (n_fold < 1 || !q.rotation_invariant(n_fold)) {
    std::ostringstream os;
    os << "Q is not invariant under rotation by 2 pi / " << n_fold;
    throw Error(ErrorCode::NotInvariant, "surface_builder", os.str());
  }
  const Grid& g = s.grid();
  const Complex rot = std::polar(1.0, 2.0 * std::numbers::pi / n_fold);
  const double slack = 1e-12 * (1.0 + g.max_modulus());
  std::vector<Eigen::Vector4d> xs, ys;
  for (int j = 1; j < g.ny() - 1; ++j)
    for (int i = 1; i < g.nx() - 1; ++i) {
      const Complex w = rot * g.z(i, j);
      if (w.real() < g.x_min() - slack || w.real() > g.x_max() + slack || w.imag() < g.y_min() - slack ||
          w.imag() > g.y_max() + slack)
        continue;
      const double wx = std::clamp(w.real(), g.x_min(), g.x_max());
      const double wy = std::clamp(w.imag(), g.y_min(), g.y_max());
      xs.push_back(as_vector(s.f(i, j)));
      ys.push_back(as_vector(bilinear(s.f, wx, wy)));
    }
  EquivarianceResult out;
  out.samples = static_cast<int>(xs.size());
  if (out.samples < 4) throw Error(ErrorCode::InvalidGrid, "surface_builder", "too few rotated samples");

  Eigen::MatrixXd X(out.samples, 4), Y(out.samples, 4);
  for (int k = 0; k < out.samples; ++k) {
    X.row(k) = xs[k].transpose();
    Y.row(k) = ys[k].transpose();
  }
  // Row form: X rho^T = Y.
  Eigen::Matrix4d rho = X.colPivHouseholderQr().solve(Y).transpose();
  const Eigen::Matrix4d eta = Eigen::Vector4d(-1, 1, 1, 1).asDiagonal();
  for (int it = 0; it < 100; ++it) {
    const Eigen::Matrix4d next = 0.5 * (rho + eta * rho.inverse().transpose() * eta);
    const double change = (next - rho).norm();
    rho = next;
    if (change < 1e-15) break;
  }
  out.rho = rho;
  out.det = rho.determinant();
  out.orthochronous = rho(0, 0) >= 1.0 - 1e-12 && out.det > 0.0;
  out.isometry_defect = (rho.transpose() * eta * rho - eta).norm();
  for (int k = 0; k < out.samples; ++k) out.residual = std::max(out.residual, (rho * xs[k] - ys[k]).norm());
  return out;
}

FrameField boost_frame(const FrameField& frame, const RealField& phi) {
  FrameField out = frame;
  for (int k = 0; k < frame.psi.grid().size(); ++k) {
    const double t = phi.values()[k];
    C2x2 b = C2x2::Zero();
    b(0, 0) = std::exp(t);
    b(1, 1) = std::exp(-t);
    out.psi.values()[k] = frame.psi.values()[k] * b;
  }
  return out;
}

}  // namespace cgc

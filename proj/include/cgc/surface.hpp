#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "cgc/lax_frame.hpp"

namespace cgc {

// f = Psi e0 Psi*, n = Psi e1 Psi* stored as (symmetrized) Hermitian matrices.
struct SurfaceData {
  MatrixField f;
  MatrixField n;
  Complex lambda;
  // Max over nodes of |det f - 1|, |<f,n>|, |<n,n> - 1|.
  double det_residual = 0.0;
  double fn_residual = 0.0;
  double nn_residual = 0.0;

  const Grid& grid() const { return f.grid(); }
  HermMatrix f_at(int i, int j) const { return HermMatrix::from_matrix(f(i, j)); }
  HermMatrix n_at(int i, int j) const { return HermMatrix::from_matrix(n(i, j)); }
};

// Throws HyperboloidDrift if |det f - 1| > 1e-6 or trace f <= 0 anywhere.
SurfaceData build_surface(const FrameField& frame);

using RealMatrixField = Field<Eigen::Matrix2d>;

// Finite-difference fundamental forms. Complex parts follow
// I = Q dz^2 + 2 ell dz dzbar + conj(Q) dzbar^2, III likewise with (Q3, ell3);
// m is the dz dzbar half-coefficient of II. I, II, III are the real
// coefficient matrices in (x, y).
struct NumericForms {
  ComplexField Q;
  RealField ell;
  RealField m;
  ComplexField Q3;
  RealField ell3;
  RealMatrixField I;
  RealMatrixField II;
  RealMatrixField III;
};

NumericForms fundamental_forms_numeric(const SurfaceData& s);

// Closed-form counterparts from (u, Q samples, sigma).
struct ClosedForms {
  RealField ell;    // (e^u + |Q|^2 e^-u)/2
  RealField m;      // sigma (e^u - |Q|^2 e^-u)/2
  ComplexField Q3;  // -sigma^2 Q
  RealField ell3;   // sigma^2 ell
  RealField H;      // sigma (e^{2u} + |Q|^2)/(e^{2u} - |Q|^2)
  RealField H_printed;  // the same with an extra factor 1/2
};
ClosedForms closed_forms(const RealField& u, const ComplexField& q_samples, double sigma);

// K_num = -1 + det II / det I; DegenerateMetric if det I <= 0.
RealField curvature(const NumericForms& forms);
// H_num = tr(I^-1 II) / 2.
RealField mean_curvature(const NumericForms& forms);

// || III - 2 H II + (K+1) I ||_F per node.
RealField relation_residual(const NumericForms& forms, const RealField& H, double K);

struct RecoveredQ {
  ComplexField q_num;
  RealField dbar;      // |dbar_h Q_num|
  RealField mismatch;  // |Q_num - Q_expected|
};
RecoveredQ recover_q(const NumericForms& forms, const ComplexField& q_expected);

struct FamilyMember {
  Complex lambda;
  SurfaceData surface;
  NumericForms forms;
  RealField K_num;
};

struct FamilyResult {
  std::vector<FamilyMember> members;
  // Interior maxima over all members relative to the first (lambda = 1).
  double II_deviation = 0.0;
  double K_deviation = 0.0;
  double Q_mismatch = 0.0;  // |Q_num - lambda^-2 Q_in|
};

// Members at lambda_k = exp(2 pi i k / count).
FamilyResult associated_family(const std::function<MaurerCartanData(Complex)>& builder, int count,
                               const ComplexField& q_in, int ring = 1);

// 2 (e^u + |Q|^2 e^-u).
RealField weak_metric(const RealField& u, const ComplexField& q_samples);
RealField weak_metric(const MetricField& metric, const QDiff& q);
// || I + III/(1+K) - coefficient id ||_F per node.
RealField weak_metric_residual(const NumericForms& forms, const RealField& coefficient, double K);

struct RadialLength {
  double weak = 0.0;       // integral of sqrt(2(e^u + |Q|^2 e^-u)) |dz|
  double conformal = 0.0;  // integral of e^{u/2} |dz|
  double end_modulus = 0.0;
};
// Trapezoid rule along the grid ray from the base node in direction (di, dj),
// each in {-1, 0, 1}, until the boundary.
RadialLength radial_weak_length(const RealField& u, const ComplexField& q_samples, int di, int dj);

struct EquivarianceResult {
  double residual = 0.0;
  Eigen::Matrix4d rho = Eigen::Matrix4d::Identity();
  double det = 1.0;
  bool orthochronous = true;
  // || rho^T eta rho - eta ||.
  double isometry_defect = 0.0;
  int samples = 0;
};

// Fits the Lorentz transformation rho with f(gamma z) = rho f(z) for
// gamma z = e^{2 pi i / n_fold} z. NotInvariant unless Q is invariant.
EquivarianceResult equivariance_check(const SurfaceData& s, const QDiff& q, int n_fold);

// Psi exp(phi e1): pushes f off itself along n by a non-constant distance.
// The result is no longer the frame of a constant-curvature surface.
FrameField boost_frame(const FrameField& frame, const RealField& phi);

}  // namespace cgc

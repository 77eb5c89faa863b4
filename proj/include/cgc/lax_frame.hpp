#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cgc/gauss_solver.hpp"

namespace cgc {

// Per-node d u = (u_x - i u_y)/2 (fourth-order stencils) with X = (1+sigma)/2, Y = (1-sigma)/2.
struct DerivativeField {
  ComplexField du;
  double X = 0.0;
  double Y = 0.0;
};

DerivativeField derivative_field(const MetricField& metric);

// p = (-dbar Q + e^-u Q d conj(Q)) / (2 (e^u - |Q|^2 e^-u)), derivatives of the
// samples by finite differences. Zero for holomorphic Q.
ComplexField compute_p(const RealField& u, const ComplexField& q_samples);

// Closed-form conformal factor, for seeds where u and d u are known exactly.
struct ExactMetric {
  std::function<double(Complex)> u;
  std::function<Complex(Complex)> du;
};
ExactMetric exact_umbilic(double K);
ExactMetric exact_spherical(double K);

using UVPair = std::pair<C2x2, C2x2>;

// U dz + V dzbar on the grid for one spectral parameter.
struct MaurerCartanData {
  MatrixField U;
  MatrixField V;
  Complex lambda;
  bool constant_curvature = true;
  // Exact coefficients at arbitrary (x, y); empty for solved fields, in which
  // case RK4 stages interpolate linearly between nodes.
  std::function<UVPair(double, double)> exact;
};

// Node formula shared by every builder:
// U = (du/4 + p) e1 + X lambda^-1 (e^{u/2} e2^ + Q e^{-u/2} e3^)
// V = -(conj(du)/4 + conj(p)) e1 + Y lambda (conj(Q) e^{-u/2} e2^ + e^{u/2} e3^)
UVPair uv_at(double u, Complex du, Complex q, Complex p, double sigma, Complex lambda);

MaurerCartanData build_uv(const MetricField& metric, const DerivativeField& d, const QDiff& q,
                          Complex lambda);
// General (possibly non-holomorphic) Q samples with the matching p.
MaurerCartanData build_uv_general(const MetricField& metric, const DerivativeField& d,
                                  const ComplexField& q_samples, const ComplexField& p,
                                  Complex lambda);
MaurerCartanData build_uv_exact(const ExactMetric& metric, double K, const QDiff& q,
                                const Grid& grid, Complex lambda);

// || dbar U - d V + [V, U] ||_F per interior node (boundary 0).
RealField zero_curvature_residual(const MaurerCartanData& mc);

enum class PathOrder { RowsThenColumns, ColumnsThenRows };

struct FrameField {
  MatrixField psi;
  Complex lambda;
  // |det Psi - 1| before renormalization, worst single step and per unit length.
  double max_det_drift = 0.0;
  double det_drift_per_length = 0.0;
  std::vector<std::string> warnings;
};

// Psi_x = Psi (U + V), Psi_y = Psi i (U - V), Psi(z*) = id; classical RK4 along
// the base row then each column (or the transpose order), det renormalized by
// the principal square root after every step.
FrameField integrate_frame(const MaurerCartanData& mc, PathOrder order = PathOrder::RowsThenColumns);

enum class RealForm { SU11, SU2 };

// max_node || V + e1 U* e1 || (SU11) or || V + U* || (SU2).
double reality_residual(const MaurerCartanData& mc, RealForm target);
// max_node || Psi* e1 Psi - e1 || (SU11) or || Psi* Psi - id || (SU2).
double frame_unitarity_residual(const FrameField& frame, RealForm target);
// max_node |det Psi - 1|.
double det_residual(const FrameField& frame);
// max_node || Psi_a - Psi_b ||.
double frame_difference(const FrameField& a, const FrameField& b);

// max_node || e1 U(lambda) e1 - U(-lambda) || + same for V.
double twist_residual(const MaurerCartanData& at_lambda, const MaurerCartanData& at_minus_lambda);

}  // namespace cgc

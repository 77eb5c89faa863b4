#pragma once

#include <optional>

#include "cgc/surface.hpp"

namespace cgc {

// |lambda0| = exp(arcosh sqrt(-1/K)) for K < 0, exp(arsinh sqrt(1/K)) for K > 0;
// cross-checked against sqrt((1+sigma)/(1 -+ sigma)).
double lambda0(double K);

enum class MapTarget { Generic, H2, S2 };

using SpherePoint = Eigen::Vector3d;

struct LagrangianMapField {
  MatrixField L;  // i Psi e1 Psi^-1
  Complex lambda;
  MapTarget target = MapTarget::Generic;
  std::optional<ComplexField> disk;             // H2
  std::optional<Field<SpherePoint>> sphere;     // S2
  double trace_residual = 0.0;   // max |tr L|
  double square_residual = 0.0;  // max || L^2 + id ||
};

// Projects to the disk (H2) or sphere (S2) when a target is given; orbit
// violations propagate as NotOnOrbit.
LagrangianMapField lagrangian_map(const FrameField& frame, MapTarget target = MapTarget::Generic);

// min over interior nodes of |Jacobian| of z -> w (disk) or z -> s (sphere).
double min_jacobian(const LagrangianMapField& map, int ring = 1);

struct EnergyResult {
  ComplexField dd;     // <dL, dL>
  ComplexField ddbar;  // <dL, dbar L>
  RealField dd_residual;     // |<dL,dL> + K e^{-2 i theta} Q|
  RealField ddbar_residual;  // |<dL,dbar L> -+ K (e^u + |Q|^2 e^-u)/2|
};

// Killing metric +tr/2 on su(1,1) (H2), -tr/2 on su(2) (S2); theta = arg lambda.
EnergyResult energy_check(const LagrangianMapField& map, const RealField& u,
                          const ComplexField& q_samples, double K);

struct HarmonicityResult {
  // || dbar P + d R + [U, R] + [V, P] ||_F with P, R the off-diagonal parts of
  // U, V: the coefficient of d(*alpha_p) + [alpha ^ *alpha_p].
  RealField two_form;
  // Off-diagonal part of [P, R] (identically 0).
  double bracket_p = 0.0;
  // [P, R] = c e1: max |c - XY (e^u - |Q|^2 e^-u)|.
  double bracket_k_mismatch = 0.0;
};

HarmonicityResult harmonicity_residual(const MaurerCartanData& mc, const RealField& u,
                                       const ComplexField& q_samples, double sigma);

// Harmonic-map data for the converse: u_hat solves the normalized equation
// (1/4) Lap u + (K_hat/2)(e^u - |Q|^2 e^-u) = 0 with K_hat = -1 (H2), +1 (S2).
struct HarmonicSeed {
  RealField u_hat;
  QDiff q_hat;
  MapTarget target = MapTarget::H2;
};

double seed_curvature(MapTarget target);
HarmonicSeed solve_seed(const QDiff& q_hat, MapTarget target, const Grid& grid,
                        const SolveOptions& options = {});

// K from |lambda1|: -(2a/(a^2+1))^2 (H2), (2a/(a^2-1))^2 (S2).
double converse_curvature(double modulus, MapTarget target);

struct ConverseResult {
  RealField u;
  QDiff q;
  double K = 0.0;
  double scale = 0.0;  // c with e^{u/2} = |c| e^{u_hat/2}, Q = c^2 Q_hat
  double roundtrip = 0.0;  // |lambda0(K) - |lambda1||
};

// OnUnitCircle if |lambda1| = 1, OutOfRange if |lambda1| < 1.
ConverseResult converse_rescale(const HarmonicSeed& seed, Complex lambda1);

// Extended frame data of the seed:
// (d u_hat/4 e1 + lambda^-1 P) dz + (-dbar u_hat/4 e1 +- lambda P*) dzbar,
// P = (e^{u_hat/2} e2^ + Q_hat e^{-u_hat/2} e3^)/2, + for H2 and - for S2.
MaurerCartanData seed_frame_data(const HarmonicSeed& seed, Complex lambda);

struct LegendrianMapField {
  MatrixField f;
  MatrixField n;
  RealField tangency;  // |<d f, n>|
};
LegendrianMapField legendrian_map(const SurfaceData& s);

}  // namespace cgc

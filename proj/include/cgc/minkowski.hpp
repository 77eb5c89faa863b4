#pragma once

// 2x2 Hermitian-matrix model of Minkowski 4-space, hyperbolic 3-space and the
// adjoint-orbit models of H^2 (su(1,1)) and S^2 (su(2)).

#include <array>
#include <complex>

#include <Eigen/Core>

namespace cgc {

using Complex = std::complex<double>;
using C2x2 = Eigen::Matrix2cd;

inline constexpr Complex kI{0.0, 1.0};

struct MinkVector {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  friend bool operator==(const MinkVector&, const MinkVector&) = default;
};

// Hermitian 2x2 matrix stored by its independent entries, so that
// A == A* holds by construction.
class HermMatrix {
 public:
  HermMatrix() = default;
  HermMatrix(double a11, double a22, Complex a12) : a11_(a11), a22_(a22), a12_(a12) {}

  // Hermitian part of a general matrix: (M + M*)/2.
  static HermMatrix from_matrix(const C2x2& m);

  double a11() const { return a11_; }
  double a22() const { return a22_; }
  Complex a12() const { return a12_; }
  Complex a21() const { return std::conj(a12_); }

  C2x2 matrix() const;
  double det() const { return a11_ * a22_ - std::norm(a12_); }
  double trace() const { return a11_ + a22_; }

  friend bool operator==(const HermMatrix&, const HermMatrix&) = default;

 private:
  double a11_ = 0.0;
  double a22_ = 0.0;
  Complex a12_{};
};

namespace basis {
const C2x2& e0();
const C2x2& e1();
const C2x2& e2();
const C2x2& e3();
// Null vectors -(e2 -+ i e3)/2.
const C2x2& e2_hat();
const C2x2& e3_hat();
}  // namespace basis

HermMatrix herm_from_mink(const MinkVector& v);
MinkVector mink_from_herm(const HermMatrix& a);

// <xi, eta> = -(1/2) tr(xi e2 eta^T e2), plain transpose. Complex-bilinear on
// arbitrary 2x2 matrices, real on Hermitian ones.
Complex mink_pairing(const C2x2& a, const C2x2& b);
double mink_inner(const HermMatrix& a, const HermMatrix& b);
double mink_inner(const MinkVector& a, const MinkVector& b);

// Hyperboloid (x0 > 0, <p,p> = -1) to the Poincare ball.
std::array<double, 3> to_poincare_ball(const MinkVector& p, double tol = 1e-8);

// Killing metrics: +1/2 tr on su(1,1), -1/2 tr on su(2).
Complex killing_su11(const C2x2& a, const C2x2& b);
Complex killing_su2(const C2x2& a, const C2x2& b);

// L on the SU(1,1)-orbit of i e1 (upper sheet) -> point of the unit disk.
Complex su11_disk(const C2x2& l, double tol = 1e-6);
// L on the SU(2)-orbit of i e1 -> unit vector of S^2.
std::array<double, 3> su2_sphere(const C2x2& l, double tol = 1e-6);

double frobenius(const C2x2& m);

}  // namespace cgc

#include "cgc/minkowski.hpp"

#include <cmath>
#include <sstream>

#include "cgc/error.hpp"

namespace cgc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotOnHyperboloid: return "NotOnHyperboloid";
    case ErrorCode::NotOnOrbit: return "NotOnOrbit";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::ImmersionViolated: return "ImmersionViolated";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::ZeroLambda: return "ZeroLambda";
    case ErrorCode::HyperboloidDrift: return "HyperboloidDrift";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::OnUnitCircle: return "OnUnitCircle";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IOError: return "IOError";
  }
  return "Unknown";
}

namespace {
std::string compose(ErrorCode code, const std::string& module, const std::string& message,
                    const std::optional<std::pair<int, int>>& node) {
  std::ostringstream os;
  os << module << ": " << to_string(code) << ": " << message;
  if (node) os << " (node i=" << node->first << ", j=" << node->second << ")";
  return os.str();
}
}  // namespace

Error::Error(ErrorCode code, std::string module, const std::string& message,
             std::optional<std::pair<int, int>> node)
    : std::runtime_error(compose(code, module, message, node)),
      code_(code),
      module_(std::move(module)),
      node_(node) {}

HermMatrix HermMatrix::from_matrix(const C2x2& m) {
  return {m(0, 0).real(), m(1, 1).real(), 0.5 * (m(0, 1) + std::conj(m(1, 0)))};
}

C2x2 HermMatrix::matrix() const {
  C2x2 m;
  m << a11_, a12_, std::conj(a12_), a22_;
  return m;
}

namespace basis {
namespace {
C2x2 make(Complex a, Complex b, Complex c, Complex d) {
  C2x2 m;
  m << a, b, c, d;
  return m;
}
}  // namespace

const C2x2& e0() {
  static const C2x2 m = make(1.0, 0.0, 0.0, 1.0);
  return m;
}
const C2x2& e1() {
  static const C2x2 m = make(1.0, 0.0, 0.0, -1.0);
  return m;
}
const C2x2& e2() {
  static const C2x2 m = make(0.0, -kI, kI, 0.0);
  return m;
}
const C2x2& e3() {
  static const C2x2 m = make(0.0, 1.0, 1.0, 0.0);
  return m;
}
const C2x2& e2_hat() {
  static const C2x2 m = make(0.0, kI, 0.0, 0.0);
  return m;
}
const C2x2& e3_hat() {
  static const C2x2 m = make(0.0, 0.0, -kI, 0.0);
  return m;
}
}  // namespace basis

// x0 e0 + x1 e1 + x2 e2 + x3 e3 = [[x0 + x1, x3 - i x2], [x3 + i x2, x0 - x1]]
HermMatrix herm_from_mink(const MinkVector& v) {
  return {v.x0 + v.x1, v.x0 - v.x1, Complex(v.x3, -v.x2)};
}

MinkVector mink_from_herm(const HermMatrix& a) {
  return {0.5 * (a.a11() + a.a22()), 0.5 * (a.a11() - a.a22()), -a.a12().imag(),
          a.a12().real()};
}

Complex mink_pairing(const C2x2& a, const C2x2& b) {
  const C2x2& e2 = basis::e2();
  return -0.5 * (a * e2 * b.transpose() * e2).trace();
}

double mink_inner(const HermMatrix& a, const HermMatrix& b) {
  return mink_pairing(a.matrix(), b.matrix()).real();
}

double mink_inner(const MinkVector& a, const MinkVector& b) {
  return -a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

std::array<double, 3> to_poincare_ball(const MinkVector& p, double tol) {
  const double q = mink_inner(p, p);
  const double scale = 1.0 + p.x0 * p.x0 + p.x1 * p.x1 + p.x2 * p.x2 + p.x3 * p.x3;
  if (std::abs(q + 1.0) > tol * scale || p.x0 <= 0.0) {
    std::ostringstream os;
    os << "<p,p> = " << q << ", x0 = " << p.x0;
    throw Error(ErrorCode::NotOnHyperboloid, "minkowski_model", os.str());
  }
  const double d = 1.0 + p.x0;
  return {p.x1 / d, p.x2 / d, p.x3 / d};
}

Complex killing_su11(const C2x2& a, const C2x2& b) { return 0.5 * (a * b).trace(); }
Complex killing_su2(const C2x2& a, const C2x2& b) { return -0.5 * (a * b).trace(); }

double frobenius(const C2x2& m) { return m.norm(); }

Complex su11_disk(const C2x2& l, double tol) {
  const C2x2& e1 = basis::e1();
  const C2x2 ie1 = kI * e1;
  const double scale = 1.0 + l.squaredNorm();
  // su(1,1) membership: L* e1 + e1 L = 0.
  const double algebra = frobenius(l.adjoint() * e1 + e1 * l);
  const double orbit = std::abs(killing_su11(l, l) + 1.0);
  const double x0 = -killing_su11(l, ie1).real();
  if (algebra > tol * scale || orbit > tol * scale || x0 <= 0.0) {
    std::ostringstream os;
    os << "su(1,1) residual " << algebra << ", orbit residual " << orbit << ", x0 = " << x0;
    throw Error(ErrorCode::NotOnOrbit, "minkowski_model", os.str());
  }
  const double x1 = killing_su11(l, basis::e2()).real();
  const double x2 = killing_su11(l, basis::e3()).real();
  return Complex(x1, x2) / (1.0 + x0);
}

std::array<double, 3> su2_sphere(const C2x2& l, double tol) {
  const double scale = 1.0 + l.squaredNorm();
  const double algebra = frobenius(l + l.adjoint()) + std::abs(l.trace());
  const double orbit = std::abs(killing_su2(l, l) - 1.0);
  if (algebra > tol * scale || orbit > tol * scale) {
    std::ostringstream os;
    os << "su(2) residual " << algebra << ", orbit residual " << orbit;
    throw Error(ErrorCode::NotOnOrbit, "minkowski_model", os.str());
  }
  return {killing_su2(l, kI * basis::e1()).real(), killing_su2(l, kI * basis::e2()).real(),
          killing_su2(l, kI * basis::e3()).real()};
}

}  // namespace cgc

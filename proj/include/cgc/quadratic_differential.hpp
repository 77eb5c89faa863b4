#pragma once

#include <string>
#include <vector>

#include "cgc/grid.hpp"

namespace cgc {

enum class QDomain { UnitDisk, Plane };
enum class QKind { Zero, Constant, Polynomial };

// Holomorphic quadratic differential Q dz^2 with polynomial coefficient
// Q(z) = a_0 + a_1 z + ... + a_d z^d.
class QDiff {
 public:
  static QDiff zero(QDomain domain = QDomain::UnitDisk);
  static QDiff constant(Complex c, QDomain domain = QDomain::UnitDisk);
  // Trailing zero coefficients are dropped; the kind follows the result.
  static QDiff polynomial(std::vector<Complex> coefficients, QDomain domain = QDomain::UnitDisk);

  QKind kind() const { return kind_; }
  QDomain domain() const { return domain_; }
  const std::vector<Complex>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  // A constant differential on the whole plane only gives the degenerate
  // geodesic case. Empty when fine.
  std::vector<std::string> warnings() const;

  // Q(gamma z) gamma'(z)^2 = Q(z) for gamma z = e^{2 pi i / n} z.
  bool rotation_invariant(int n_fold, double tol = 1e-12) const;

  QDiff scaled(Complex factor) const;

 private:
  QDiff(std::vector<Complex> coeffs, QDomain domain);

  std::vector<Complex> coeffs_;
  QDomain domain_;
  QKind kind_;
};

Complex eval_q(const QDiff& q, Complex z);
Complex eval_dq(const QDiff& q, Complex z);

// Throws OutOfDomain unless the whole grid lies in the declared domain.
void check_grid_in_domain(const QDiff& q, const Grid& grid);

ComplexField sample_q(const QDiff& q, const Grid& grid);

// max over nodes of |Q(z)| (1-|z|^2)^2 / 4, i.e. |Q| against the Poincare
// metric 4(1-|z|^2)^-2.
double poincare_sup(const QDiff& q, const Grid& grid);

}  // namespace cgc

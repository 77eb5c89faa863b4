#include "cgc/quadratic_differential.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "cgc/error.hpp"

namespace cgc {

QDiff::QDiff(std::vector<Complex> coeffs, QDomain domain) : coeffs_(std::move(coeffs)), domain_(domain) {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
  if (coeffs_.empty()) {
    kind_ = QKind::Zero;
    coeffs_.push_back(0.0);
  } else if (coeffs_.size() == 1) {
    kind_ = QKind::Constant;
  } else {
    kind_ = QKind::Polynomial;
  }
}

QDiff QDiff::zero(QDomain domain) { return QDiff({}, domain); }
QDiff QDiff::constant(Complex c, QDomain domain) { return QDiff({c}, domain); }
QDiff QDiff::polynomial(std::vector<Complex> coefficients, QDomain domain) {
  return QDiff(std::move(coefficients), domain);
}

std::vector<std::string> QDiff::warnings() const {
  std::vector<std::string> out;
  if (domain_ == QDomain::Plane && kind_ != QKind::Polynomial) {
    out.emplace_back(
        "Q is constant on the plane: the complete solution degenerates (e^{2u} = |Q|^2, a geodesic)");
  }
  return out;
}

bool QDiff::rotation_invariant(int n_fold, double tol) const {
  // Q(w z) w^2 = Q(z) coefficientwise: a_k w^{k+2} = a_k.
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / n_fold);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Complex factor = std::pow(w, static_cast<int>(k) + 2);
    if (std::abs(coeffs_[k] * (factor - 1.0)) > tol * (1.0 + std::abs(coeffs_[k]))) return false;
  }
  return true;
}

QDiff QDiff::scaled(Complex factor) const {
  std::vector<Complex> c = coeffs_;
  for (auto& a : c) a *= factor;
  return QDiff(std::move(c), domain_);
}

namespace {
void check_point(const QDiff& q, Complex z) {
  if (q.domain() == QDomain::UnitDisk && std::abs(z) >= 1.0) {
    std::ostringstream os;
    os << "|z| = " << std::abs(z) << " outside the unit disk";
    throw Error(ErrorCode::OutOfDomain, "quadratic_differential", os.str());
  }
}
}  // namespace

Complex eval_q(const QDiff& q, Complex z) {
  check_point(q, z);
  const auto& a = q.coefficients();
  Complex acc = a.back();
  for (int k = static_cast<int>(a.size()) - 2; k >= 0; --k) acc = acc * z + a[k];
  return acc;
}

Complex eval_dq(const QDiff& q, Complex z) {
  check_point(q, z);
  const auto& a = q.coefficients();
  if (a.size() < 2) return 0.0;
  Complex acc = a.back() * static_cast<double>(a.size() - 1);
  for (int k = static_cast<int>(a.size()) - 2; k >= 1; --k) acc = acc * z + a[k] * static_cast<double>(k);
  return acc;
}

void check_grid_in_domain(const QDiff& q, const Grid& grid) {
  if (q.domain() == QDomain::UnitDisk && grid.max_modulus() >= 1.0) {
    std::ostringstream os;
    os << "grid reaches |z| = " << grid.max_modulus();
    throw Error(ErrorCode::OutOfDomain, "quadratic_differential", os.str());
  }
}

ComplexField sample_q(const QDiff& q, const Grid& grid) {
  check_grid_in_domain(q, grid);
  return sample<Complex>(grid, [&](double x, double y) { return eval_q(q, {x, y}); });
}

double poincare_sup(const QDiff& q, const Grid& grid) {
  check_grid_in_domain(q, grid);
  double best = 0.0;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      const Complex z = grid.z(i, j);
      const double w = 1.0 - std::norm(z);
      best = std::max(best, std::abs(eval_q(q, z)) * w * w / 4.0);
    }
  return best;
}

}  // namespace cgc

#include <cmath>

#include "doctest.h"

#include "cgc/error.hpp"
#include "cgc/quadratic_differential.hpp"

using namespace cgc;

TEST_CASE("eval_q examples") {
  CHECK(eval_q(QDiff::zero(), {0.3, 0.1}) == Complex(0.0));
  const QDiff z2 = QDiff::polynomial({0.0, 0.0, 1.0}, QDomain::Plane);
  CHECK(std::abs(eval_q(z2, {1.0, 1.0}) - Complex(0.0, 2.0)) < 1e-15);
  const Complex c(0.2, -0.7);
  CHECK(eval_q(QDiff::constant(c), {0.5, 0.5}) == c);
  CHECK(QDiff::constant(c).kind() == QKind::Constant);
  CHECK(z2.kind() == QKind::Polynomial);
  CHECK(z2.degree() == 2);
}

TEST_CASE("trailing zero coefficients collapse the kind") {
  CHECK(QDiff::polynomial({0.0, 0.0}).kind() == QKind::Zero);
  CHECK(QDiff::polynomial({1.5, 0.0}).kind() == QKind::Constant);
}

TEST_CASE("eval_dq examples") {
  CHECK(eval_dq(QDiff::constant(3.0), {0.1, 0.2}) == Complex(0.0));
  const QDiff z2 = QDiff::polynomial({0.0, 0.0, 1.0}, QDomain::Plane);
  CHECK(std::abs(eval_dq(z2, 1.0) - Complex(2.0)) < 1e-15);
  const QDiff z3 = QDiff::polynomial({0.0, 0.0, 0.0, 1.0}, QDomain::Plane);
  CHECK(std::abs(eval_dq(z3, kI) - Complex(-3.0)) < 1e-15);
}

TEST_CASE("domain checks") {
  const QDiff q = QDiff::polynomial({0.0, 1.0});
  CHECK_NOTHROW(check_grid_in_domain(q, Grid::inscribed(0.8, 17)));
  try {
    check_grid_in_domain(q, Grid::square(0.8, 17));
    FAIL("expected OutOfDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfDomain);
  }
  CHECK_NOTHROW(check_grid_in_domain(QDiff::polynomial({0.0, 1.0}, QDomain::Plane), Grid::square(3.0, 9)));
}

TEST_CASE("sampling matches evaluation") {
  const QDiff q = QDiff::polynomial({Complex(0.1, 0.2), Complex(-0.3), Complex(0.0, 0.5)});
  const Grid g = Grid::inscribed(0.8, 9);
  const ComplexField s = sample_q(q, g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) CHECK(s(i, j) == eval_q(q, g.z(i, j)));
}

TEST_CASE("Poincare sup norm") {
  CHECK(poincare_sup(QDiff::zero(), Grid::inscribed(0.8, 9)) == 0.0);
  CHECK(poincare_sup(QDiff::constant(4.0), Grid::inscribed(0.8, 9)) == doctest::Approx(1.0));
  const double v = poincare_sup(QDiff::polynomial({0.0, 1.0}), Grid::inscribed(0.8, 33));
  CHECK(std::isfinite(v));
  CHECK(v <= 0.2);
}

TEST_CASE("rotational invariance as a differential") {
  const QDiff z2 = QDiff::polynomial({0.0, 0.0, 1.0});
  CHECK(z2.rotation_invariant(2));
  CHECK(QDiff::zero().rotation_invariant(4));
  CHECK_FALSE(QDiff::polynomial({0.0, 1.0}).rotation_invariant(2));
  CHECK_FALSE(QDiff::constant(1.0).rotation_invariant(4));
}

TEST_CASE("scaling") {
  const QDiff q = QDiff::polynomial({1.0, 2.0}).scaled(Complex(0.0, 1.0));
  CHECK(std::abs(eval_q(q, 0.5) - Complex(0.0, 2.0)) < 1e-15);
}

TEST_CASE("constant differential on the plane warns") {
  CHECK(QDiff::constant(1.0, QDomain::Plane).warnings().size() == 1);
  CHECK(QDiff::polynomial({0.0, 1.0}, QDomain::Plane).warnings().empty());
  CHECK(QDiff::constant(1.0).warnings().empty());
}

#include <cmath>

#include "doctest.h"

#include "cgc/error.hpp"
#include "cgc/grid.hpp"

using namespace cgc;

TEST_CASE("grid geometry") {
  const Grid g = Grid::square(1.0, 21);
  CHECK(g.h() == doctest::Approx(0.1));
  CHECK(g.base_i() == 10);
  CHECK(g.base_j() == 10);
  CHECK(std::abs(g.z(g.base_i(), g.base_j())) < 1e-15);
  const Grid r = g.refined();
  CHECK(r.nx() == 41);
  CHECK(r.h() == doctest::Approx(0.05));
  CHECK(r.x_max() == doctest::Approx(1.0));
  const Grid in = Grid::inscribed(0.8, 33);
  CHECK(in.max_modulus() == doctest::Approx(0.8));
}

TEST_CASE("invalid grids are rejected") {
  CHECK_THROWS_AS(Grid::rectangle(1.0, 0.0, 0.0, 1.0, 9, 9), Error);
  CHECK_THROWS_AS(Grid::square(1.0, 8), Error);
}

TEST_CASE("derivatives of polynomials") {
  const Grid g = Grid::square(0.5, 17);
  const auto f = sample<double>(g, [](double x, double y) { return x * x + 3.0 * x * y - y * y; });
  const ComplexField dz = d_z(f);
  const ComplexField dz4 = d_z4(f);
  const RealField lap = laplacian(f);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double x = g.x(i), y = g.y(j);
      // f_z = (f_x - i f_y)/2
      const Complex expect = 0.5 * Complex(2 * x + 3 * y, -(3 * x - 2 * y));
      CHECK(std::abs(dz(i, j) - expect) < 1e-12);
      CHECK(std::abs(dz4(i, j) - expect) < 1e-12);
      if (!g.on_boundary(i, j)) CHECK(std::abs(lap(i, j)) < 1e-10);
    }
}

TEST_CASE("holomorphic samples have vanishing dbar") {
  const Grid g = Grid::square(0.5, 17);
  const auto q = sample<Complex>(g, [](double x, double y) {
    const Complex z(x, y);
    return z * z;
  });
  const RealField a = abs_field(d_zbar(q));
  CHECK(interior_max(a, 0) < 1e-12);
  const RealField b = abs_field(d_z(q));
  CHECK(b(16, 8) == doctest::Approx(1.0));
}

TEST_CASE("fourth-order stencil converges faster") {
  auto err = [](int n, bool fourth) {
    const Grid g = Grid::square(0.5, n);
    const auto f = sample<double>(g, [](double x, double y) { return std::exp(x) * std::sin(2 * y); });
    const ComplexField d = fourth ? d_z4(f) : d_z(f);
    double worst = 0.0;
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) {
        const double x = g.x(i), y = g.y(j);
        const Complex e = 0.5 * Complex(std::exp(x) * std::sin(2 * y), -2.0 * std::exp(x) * std::cos(2 * y));
        worst = std::max(worst, std::abs(d(i, j) - e));
      }
    return worst;
  };
  const double r2 = err(17, false) / err(33, false);
  const double r4 = err(17, true) / err(33, true);
  CHECK(r2 > 3.0);
  CHECK(r2 < 5.0);
  CHECK(r4 > 12.0);
}

TEST_CASE("interior stats and core ring") {
  const Grid g = Grid::square(1.0, 9);
  RealField f(g, 0.0);
  f(0, 0) = 100.0;
  f(4, 4) = -3.0;
  const FieldStats s = interior_stats(f, 1);
  CHECK(s.max == 3.0);
  CHECK(s.count == 49);
  CHECK(interior_stats(f, 0).max == 100.0);
  CHECK(core_ring(Grid::square(1.0, 129)) == 8);
  CHECK(core_ring(Grid::square(1.0, 17)) == 1);
}

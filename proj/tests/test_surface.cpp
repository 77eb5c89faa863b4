#include <cmath>
#include <numbers>

#include "doctest.h"

#include "cgc/error.hpp"
#include "cgc/surface.hpp"

using namespace cgc;

namespace {
struct Fixture {
  MetricField metric;
  QDiff q;
  ComplexField qs;
  DerivativeField d;
};

Fixture umbilic(int n) {
  const MetricField m = umbilic_seed(-0.75, Grid::inscribed(0.8, n));
  return {m, QDiff::zero(), sample_q(QDiff::zero(), m.grid()), derivative_field(m)};
}

Fixture linear(int n) {
  const Grid g = Grid::inscribed(0.8, n);
  const QDiff q = QDiff::polynomial({0.0, 0.1});
  const MetricField m = solve_gauss(q, -0.75, g, heuristic_boundary(q, -0.75, g));
  return {m, q, sample_q(q, g), derivative_field(m)};
}

SurfaceData surface(const Fixture& fx, Complex lambda) {
  return build_surface(integrate_frame(build_uv(fx.metric, fx.d, fx.q, lambda)));
}

double core_max(const RealField& f) { return interior_max(f, core_ring(f.grid())); }

RealField deviation(const RealField& f, double target) {
  RealField out(f.grid());
  for (std::size_t k = 0; k < f.values().size(); ++k) out.values()[k] = f.values()[k] - target;
  return out;
}

RealField difference(const RealField& a, const RealField& b) {
  RealField out(a.grid());
  for (std::size_t k = 0; k < a.values().size(); ++k) out.values()[k] = a.values()[k] - b.values()[k];
  return out;
}
}  // namespace

TEST_CASE("identity frame gives the base point") {
  const Grid g = Grid::square(0.3, 9);
  const FrameField id{MatrixField(g, C2x2::Identity()), 1.0, 0.0, 0.0, {}};
  const SurfaceData s = build_surface(id);
  for (int k = 0; k < g.size(); ++k) {
    CHECK((s.f.values()[k] - basis::e0()).norm() == 0.0);
    CHECK((s.n.values()[k] - basis::e1()).norm() == 0.0);
  }
  CHECK(s.det_residual == 0.0);
}

TEST_CASE("frames off SL(2,C) are rejected") {
  const Grid g = Grid::square(0.3, 9);
  const FrameField bad{MatrixField(g, C2x2(2.0 * C2x2::Identity())), 1.0, 0.0, 0.0, {}};
  try {
    build_surface(bad);
    FAIL("expected HyperboloidDrift");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HyperboloidDrift);
    CHECK(e.node().has_value());
  }
}

TEST_CASE("umbilic surface lies on the hyperboloid with K = -3/4") {
  const Fixture fx = umbilic(65);
  const SurfaceData s = surface(fx, 1.0);
  CHECK(s.det_residual <= 1e-10);
  CHECK(s.fn_residual <= 1e-10);
  CHECK(s.nn_residual <= 1e-10);
  const NumericForms forms = fundamental_forms_numeric(s);
  CHECK(core_max(deviation(curvature(forms), -0.75)) <= 5e-3);
  const ClosedForms c = closed_forms(fx.metric.u, fx.qs, fx.metric.sigma);
  CHECK(core_max(difference(forms.ell, c.ell)) <= 1e-2 * core_max(c.ell));
  CHECK(core_max(difference(forms.ell3, c.ell3)) <= 1e-2 * core_max(c.ell3));
}

TEST_CASE("umbilic Q_num vanishes at second order") {
  const double a = core_max(abs_field(fundamental_forms_numeric(surface(umbilic(33), 1.0)).Q));
  const double b = core_max(abs_field(fundamental_forms_numeric(surface(umbilic(65), 1.0)).Q));
  CHECK(a / b > 3.5);
  CHECK(a / b < 4.5);
}

TEST_CASE("mean curvature at Q = 0 is sigma, twice the printed value") {
  const Fixture fx = umbilic(65);
  const NumericForms forms = fundamental_forms_numeric(surface(fx, 1.0));
  const RealField H = mean_curvature(forms);
  CHECK(core_max(deviation(H, 0.5)) <= 1e-3);
  const ClosedForms c = closed_forms(fx.metric.u, fx.qs, 0.5);
  CHECK(c.H(10, 10) == doctest::Approx(0.5));
  CHECK(c.H_printed(10, 10) == doctest::Approx(0.25));
  CHECK(core_max(relation_residual(forms, H, -0.75)) <= 1e-2);
}

TEST_CASE("Q is recovered and holomorphic") {
  const auto mismatch = [](int n) {
    const Fixture fx = linear(n);
    const RecoveredQ k = recover_q(fundamental_forms_numeric(surface(fx, 1.0)), fx.qs);
    return std::pair{core_max(k.mismatch), core_max(k.dbar)};
  };
  const auto [m33, d33] = mismatch(33);
  const auto [m65, d65] = mismatch(65);
  CHECK(m33 / m65 > 3.0);
  CHECK(d33 / d65 > 3.0);
}

TEST_CASE("perturbed normal is detected") {
  const Fixture fx = linear(33);
  SurfaceData s = surface(fx, 1.0);
  const Grid& g = s.grid();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) s.n(i, j) *= 1.0 + 0.3 * g.x(i) * g.y(j) + 0.2 * g.x(i);
  const NumericForms forms = fundamental_forms_numeric(s);
  CHECK(core_max(recover_q(forms, fx.qs).dbar) >= 1e-2);
  CHECK(core_max(deviation(curvature(forms), -0.75)) >= 1e-2);
}

TEST_CASE("associated family") {
  const Fixture fx = linear(33);
  const FamilyResult fam = associated_family(
      [&](Complex l) { return build_uv(fx.metric, fx.d, fx.q, l); }, 8, fx.qs, core_ring(fx.metric.grid()));
  CHECK(fam.members.size() == 8);
  CHECK(fam.members[0].lambda == Complex(1.0));
  CHECK(std::abs(fam.members[2].lambda - kI) < 1e-15);
  // Q_num is a small difference of O(e^u) terms; measure against the first form
  const double scale = core_max(fam.members[0].forms.ell);
  CHECK(fam.II_deviation <= 1e-2 * scale);
  CHECK(fam.K_deviation <= 1e-2);
  CHECK(fam.Q_mismatch <= 1e-2 * scale);
  const SurfaceData base = surface(fx, 1.0);
  CHECK((base.f(3, 4) - fam.members[0].surface.f(3, 4)).norm() == 0.0);
  const NumericForms at_i = fam.members[2].forms;
  CHECK(std::abs(at_i.Q(16, 16) + fx.qs(16, 16)) < 1e-3 * scale);
  CHECK_THROWS_AS(associated_family([&](Complex l) { return build_uv(fx.metric, fx.d, fx.q, l); }, 0, fx.qs),
                  Error);
}

TEST_CASE("weak metric") {
  const Grid g = Grid::square(0.5, 9);
  CHECK(weak_metric(RealField(g, 0.4), sample_q(QDiff::zero(), g))(3, 3) == doctest::Approx(2.0 * std::exp(0.4)));
  const double c = 0.7, delta = 0.2;
  const RealField w = weak_metric(RealField(g, std::log(c) + delta), sample_q(QDiff::constant(c), g));
  CHECK(w(2, 2) == doctest::Approx(4.0 * c * std::cosh(delta)));

  const Fixture fx = umbilic(65);
  const NumericForms forms = fundamental_forms_numeric(surface(fx, 1.0));
  const RealField coeff = weak_metric(fx.metric, fx.q);
  CHECK(core_max(weak_metric_residual(forms, coeff, -0.75)) <= 1e-2 * core_max(coeff));
}

TEST_CASE("radial weak length") {
  const Grid strip = Grid::rectangle(0.0, 0.5, -0.04, 0.04, 51, 9);
  const RadialLength r = radial_weak_length(RealField(strip, 0.0), sample_q(QDiff::zero(), strip), 1, 0);
  CHECK(r.weak == doctest::Approx(std::sqrt(2.0) * 0.5));
  CHECK(r.conformal == doctest::Approx(0.5));
  CHECK(r.end_modulus == doctest::Approx(0.5));
  CHECK_THROWS_AS(radial_weak_length(RealField(strip, 0.0), sample_q(QDiff::zero(), strip), 0, 0), Error);

  double last = 0.0;
  for (double radius : {0.6, 0.8, 0.9}) {
    const double h = radius / 512.0;
    const Grid g = Grid::rectangle(0.0, radius, -4.0 * h, 4.0 * h, 513, 9);
    const RadialLength len = radial_weak_length(umbilic_seed(-0.75, g).u, sample_q(QDiff::zero(), g), 1, 0);
    const double closed = 2.0 / std::sqrt(0.75) * std::atanh(radius);
    CHECK(len.conformal == doctest::Approx(closed).epsilon(1e-3));
    CHECK(len.weak > last);
    last = len.weak;
  }

  const double c = 0.5;
  const RadialLength deg = radial_weak_length(RealField(strip, std::log(c)), sample_q(QDiff::constant(c), strip), 1, 0);
  CHECK(std::isfinite(deg.weak));
  CHECK(deg.weak == doctest::Approx(0.5 * 2.0 * std::sqrt(c)));
}

TEST_CASE("rotational equivariance") {
  const Fixture fx = umbilic(33);
  const SurfaceData s = surface(fx, 1.0);
  const EquivarianceResult e = equivariance_check(s, QDiff::zero(), 4);
  CHECK(e.samples > 100);
  CHECK(e.isometry_defect <= 1e-10);
  CHECK(e.det == doctest::Approx(1.0));
  CHECK(e.orthochronous);
  CHECK(e.residual <= 1e-2);
  try {
    equivariance_check(s, QDiff::polynomial({0.0, 1.0}), 2);
    FAIL("expected NotInvariant");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotInvariant);
  }
}

TEST_CASE("boost gauge mixes f and n") {
  const Fixture fx = umbilic(17);
  const FrameField f = integrate_frame(build_uv(fx.metric, fx.d, fx.q, 1.0));
  const RealField phi = sample<double>(f.psi.grid(), [](double x, double y) { return 0.1 * (x * x + y * y); });
  const FrameField b = boost_frame(f, phi);
  CHECK(det_residual(b) <= 1e-12);
  const SurfaceData s0 = build_surface(f);
  const SurfaceData s1 = build_surface(b);
  // Psi diag(e^t, e^-t) e1 diag(e^t, e^-t) Psi* = Psi (cosh 2t e1 + sinh 2t e0) Psi*
  const double t = phi(3, 5);
  const C2x2 expect = std::cosh(2 * t) * s0.n(3, 5) + std::sinh(2 * t) * s0.f(3, 5);
  CHECK((s1.n(3, 5) - expect).norm() < 1e-12);
  const C2x2 expect_f = std::cosh(2 * t) * s0.f(3, 5) + std::sinh(2 * t) * s0.n(3, 5);
  CHECK((s1.f(3, 5) - expect_f).norm() < 1e-12);
}

#include <cmath>

#include "doctest.h"

#include "cgc/error.hpp"
#include "cgc/gauss_maps.hpp"
#include "cgc/surface.hpp"

using namespace cgc;

namespace {
double core_max(const RealField& f) { return interior_max(f, core_ring(f.grid())); }

struct Linear {
  MetricField metric;
  QDiff q;
  ComplexField qs;
};

Linear linear(int n) {
  const Grid g = Grid::inscribed(0.8, n);
  const QDiff q = QDiff::polynomial({0.0, 0.1});
  return {solve_gauss(q, -0.75, g, heuristic_boundary(q, -0.75, g)), q, sample_q(q, g)};
}

FrameField frame_of(const MetricField& m, const QDiff& q, Complex lambda) {
  return integrate_frame(build_uv(m, derivative_field(m), q, lambda));
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IOError;
}
}  // namespace

TEST_CASE("lambda0 values") {
  CHECK(lambda0(-0.75) == doctest::Approx(std::sqrt(3.0)));
  CHECK(lambda0(3.0) == doctest::Approx(std::sqrt(3.0)));
  CHECK(lambda0(-0.5) == doctest::Approx(1.0 + std::sqrt(2.0)));
  CHECK_NOTHROW(lambda0(-1e-6));
  CHECK_THROWS_AS(lambda0(-1.0), Error);
  CHECK_THROWS_AS(lambda0(0.0), Error);
}

TEST_CASE("identity frame maps to the base point") {
  const Grid g = Grid::square(0.3, 9);
  const FrameField id{MatrixField(g, C2x2::Identity()), 1.0, 0.0, 0.0, {}};
  const LagrangianMapField m = lagrangian_map(id, MapTarget::H2);
  CHECK((m.L(2, 3) - C2x2(kI * basis::e1())).norm() == 0.0);
  CHECK(std::abs((*m.disk)(4, 4)) == 0.0);
  CHECK(m.square_residual == 0.0);
  CHECK(min_jacobian(m) == 0.0);
  CHECK(code_of([&] { min_jacobian(lagrangian_map(id)); }) == ErrorCode::ValidationError);
}

TEST_CASE("H2 Gauss map of the umbilic surface at lambda0") {
  const MetricField m = umbilic_seed(-0.75, Grid::inscribed(0.8, 65));
  const LagrangianMapField map = lagrangian_map(frame_of(m, QDiff::zero(), lambda0(-0.75)), MapTarget::H2);
  CHECK(map.trace_residual <= 1e-10);
  CHECK(map.square_residual <= 1e-6);
  for (Complex w : map.disk->values()) CHECK(std::abs(w) < 1.0);
  CHECK(min_jacobian(map, core_ring(m.grid())) > 0.0);

  const ComplexField qs = sample_q(QDiff::zero(), m.grid());
  const EnergyResult e = energy_check(map, m.u, qs, -0.75);
  const double scale = std::exp(m.u(32, 32));
  CHECK(core_max(e.dd_residual) <= 1e-2 * scale);
  CHECK(core_max(e.ddbar_residual) <= 1e-2 * scale);
  CHECK(e.ddbar(32, 32).real() == doctest::Approx(0.375 * scale).epsilon(1e-2));
}

TEST_CASE("lambda off the real-form circle is rejected by the projection") {
  const MetricField m = umbilic_seed(-0.75, Grid::inscribed(0.8, 33));
  CHECK(code_of([&] { lagrangian_map(frame_of(m, QDiff::zero(), 1.0), MapTarget::H2); }) == ErrorCode::NotOnOrbit);
}

TEST_CASE("non-umbilic energy follows the spectral phase") {
  const Linear fx = linear(65);
  for (double theta : {0.0, 0.6}) {
    const LagrangianMapField map =
        lagrangian_map(frame_of(fx.metric, fx.q, std::polar(lambda0(-0.75), theta)), MapTarget::H2);
    const EnergyResult e = energy_check(map, fx.metric.u, fx.qs, -0.75);
    double scale = 0.0;
    for (double v : fx.metric.u.values()) scale = std::max(scale, std::exp(v));
    CHECK(core_max(e.dd_residual) <= 1e-3 * scale);
    CHECK(core_max(e.ddbar_residual) <= 1e-3 * scale);
    // non-conformal where Q != 0
    CHECK(std::abs(e.dd(60, 32)) == doctest::Approx(0.75 * std::abs(fx.qs(60, 32))).epsilon(5e-2));
  }
}

TEST_CASE("S2 Gauss map for positive curvature") {
  const Grid g = Grid::inscribed(0.5, 33);
  const MetricField m = spherical_seed(3.0, g);
  const LagrangianMapField map = lagrangian_map(frame_of(m, QDiff::zero(), lambda0(3.0)), MapTarget::S2);
  for (const SpherePoint& p : map.sphere->values()) CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(min_jacobian(map, core_ring(g)) > 0.0);
  const EnergyResult e = energy_check(map, m.u, sample_q(QDiff::zero(), g), 3.0);
  CHECK(core_max(e.ddbar_residual) <= 2e-2 * std::exp(m.u(16, 16)));
}

TEST_CASE("harmonicity") {
  auto residual = [](int n) {
    const Linear fx = linear(n);
    const MaurerCartanData mc = build_uv(fx.metric, derivative_field(fx.metric), fx.q, lambda0(-0.75));
    const HarmonicityResult hr = harmonicity_residual(mc, fx.metric.u, fx.qs, fx.metric.sigma);
    CHECK(hr.bracket_p <= 1e-12);
    CHECK(hr.bracket_k_mismatch <= 1e-12);
    return core_max(hr.two_form);
  };
  const double a = residual(33), b = residual(65);
  CHECK(a / b > 3.0);

  const Grid g = Grid::inscribed(0.5, 33);
  const MetricField m(RealField(g, 0.0), -0.75);
  const ComplexField qs = sample<Complex>(g, [](double x, double y) { return Complex(x, -y); });
  const MaurerCartanData mc = build_uv_general(m, derivative_field(m), qs, compute_p(m.u, qs), lambda0(-0.75));
  CHECK(core_max(harmonicity_residual(mc, m.u, qs, m.sigma).two_form) >= 1e-2);
}

TEST_CASE("converse curvature and rescaling") {
  CHECK(converse_curvature(std::sqrt(3.0), MapTarget::H2) == doctest::Approx(-0.75));
  CHECK(converse_curvature(std::sqrt(3.0), MapTarget::S2) == doctest::Approx(3.0));
  CHECK(seed_curvature(MapTarget::H2) == -1.0);
  CHECK(seed_curvature(MapTarget::S2) == 1.0);

  const Grid g = Grid::inscribed(0.5, 17);
  const HarmonicSeed seed = solve_seed(QDiff::polynomial({0.1, 0.2}), MapTarget::H2, g);
  for (double K : {-0.9, -0.5, -0.1}) {
    const ConverseResult cv = converse_rescale(seed, lambda0(K));
    CHECK(std::abs(cv.K - K) <= 1e-12);
    CHECK(cv.roundtrip <= 1e-12);
  }
  const ConverseResult cv = converse_rescale(seed, std::sqrt(3.0));
  CHECK(cv.scale == doctest::Approx(2.0 / std::sqrt(3.0)));
  CHECK(cv.u(3, 3) == doctest::Approx(seed.u_hat(3, 3) + 2.0 * std::log(2.0 / std::sqrt(3.0))));
  CHECK(std::abs(eval_q(cv.q, 0.0) - Complex(0.1 * 4.0 / 3.0)) < 1e-14);
  CHECK(code_of([&] { converse_rescale(seed, kI); }) == ErrorCode::OnUnitCircle);
  CHECK(code_of([&] { converse_rescale(seed, 0.5); }) == ErrorCode::OutOfRange);

  const HarmonicSeed s2 = solve_seed(QDiff::polynomial({0.1, 0.2}), MapTarget::S2, g);
  CHECK(std::abs(converse_rescale(s2, std::sqrt(3.0)).scale) == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("converse surface has the predicted curvature") {
  const Grid g = Grid::inscribed(0.5, 65);
  const HarmonicSeed seed = solve_seed(QDiff::polynomial({0.1, 0.2}), MapTarget::H2, g);
  const double l1 = std::sqrt(3.0);
  const RealField K = curvature(fundamental_forms_numeric(build_surface(integrate_frame(seed_frame_data(seed, l1)))));
  const int ring = core_ring(g);
  for (int j = ring; j < g.ny() - ring; ++j)
    for (int i = ring; i < g.nx() - ring; ++i) CHECK(std::abs(K(i, j) + 0.75) <= 5e-3);
}

TEST_CASE("Legendrian lift") {
  const Grid g = Grid::square(0.3, 9);
  const FrameField id{MatrixField(g, C2x2::Identity()), 1.0, 0.0, 0.0, {}};
  CHECK(interior_max(legendrian_map(build_surface(id)).tangency, 0) == 0.0);

  const Linear fx = linear(33);
  SurfaceData s = build_surface(frame_of(fx.metric, fx.q, 1.0));
  CHECK(core_max(legendrian_map(s).tangency) <= 1e-2);
  const MatrixField fx_d = diff_x(s.f);
  for (int j = 0; j < s.grid().ny(); ++j)
    for (int i = 0; i < s.grid().nx(); ++i) s.n(i, j) += 0.3 * fx_d(i, j);
  CHECK(core_max(legendrian_map(s).tangency) >= 1e-2);
}

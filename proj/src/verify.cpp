#include "cgc/verify.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include <Eigen/LU>

#include "cgc/error.hpp"
#include "cgc/gauss_maps.hpp"

namespace cgc {

namespace {

constexpr std::array<int, 3> kLevels{33, 65, 129};
// Per-halving reduction factor expected of a second-order quantity.
constexpr double kOrderLo = 3.0;
constexpr double kOrderHi = 5.0;
// Errors this small are rounding, not truncation; ratios carry no information.
constexpr double kRoundoffFloor = 1e-10;

using Errors = std::array<double, 3>;

struct Level {
  Grid grid;
  MetricField metric;
  ComplexField qs;
};

struct Bundle {
  SurfaceData surface;
  NumericForms forms;
  RealField K_num;
};

struct Fixture {
  std::string name;
  double K;
  QDiff q;
  std::vector<Level> levels;
  std::map<int, Bundle> base;  // lambda = 1 surface per level

  const Bundle& surface(int level) {
    auto it = base.find(level);
    if (it == base.end()) {
      const Level& L = levels[level];
      SurfaceData s = build_surface(integrate_frame(build_uv(L.metric, derivative_field(L.metric), q, 1.0)));
      NumericForms f = fundamental_forms_numeric(s);
      RealField K_num = curvature(f);
      it = base.emplace(level, Bundle{std::move(s), std::move(f), std::move(K_num)}).first;
    }
    return it->second;
  }
};

Fixture make_fixture(const std::string& name, double K, const QDiff& q, double radius, bool exact_trace) {
  Fixture fx{name, K, q, {}, {}};
  for (int n : kLevels) {
    const Grid g = Grid::inscribed(radius, n);
    const BoundaryData bc = exact_trace ? umbilic_trace(K, g) : heuristic_boundary(q, K, g);
    MetricField m = solve_gauss(q, K, g, bc);
    fx.levels.push_back({g, std::move(m), sample_q(q, g)});
  }
  return fx;
}

RealField deviation(const RealField& f, double target) {
  RealField out = f;
  for (double& v : out.values()) v = std::abs(v - target);
  return out;
}

double stddev(const RealField& f, int ring) {
  const Grid& g = f.grid();
  double sum = 0.0;
  int n = 0;
  for (int j = ring; j < g.ny() - ring; ++j)
    for (int i = ring; i < g.nx() - ring; ++i) {
      sum += f(i, j);
      ++n;
    }
  const double mean = sum / n;
  double var = 0.0;
  for (int j = ring; j < g.ny() - ring; ++j)
    for (int i = ring; i < g.nx() - ring; ++i) var += (f(i, j) - mean) * (f(i, j) - mean);
  return std::sqrt(var / n);
}

class Suite {
 public:
  explicit Suite(VerifyReport& r) : r_(r) {}

  // Records the three errors and both refinement ratios.
  bool second_order(const std::string& key, const Errors& e) {
    bool ok = true;
    for (std::size_t k = 0; k < e.size(); ++k) r_.value(key + ".N" + std::to_string(kLevels[k]), e[k]);
    if (std::max({e[0], e[1], e[2]}) <= kRoundoffFloor) {
      r_.info(key + ".order", "exact to rounding");
      return r_.at_most(key + ".max", std::max({e[0], e[1], e[2]}), kRoundoffFloor);
    }
    ok &= r_.within(key + ".ratio_33_65", e[0] / e[1], kOrderLo, kOrderHi);
    ok &= r_.within(key + ".ratio_65_129", e[1] / e[2], kOrderLo, kOrderHi);
    return ok;
  }

  template <typename F>
  Errors per_level(F&& fn) {
    Errors e{};
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = fn(static_cast<int>(k));
    return e;
  }

  Fixture& umbilic() {
    if (!umbilic_) umbilic_ = make_fixture("umbilic", -0.75, QDiff::zero(), 0.8, true);
    return *umbilic_;
  }
  Fixture& linear() {
    if (!linear_) linear_ = make_fixture("linear", -0.75, QDiff::polynomial({0.0, 0.1}), 0.8, false);
    return *linear_;
  }
  Fixture& spherical() {
    if (!spherical_) spherical_ = make_fixture("spherical", 3.0, QDiff::polynomial({0.0, 0.1}), 0.5, false);
    return *spherical_;
  }

  bool c1_minkowski();
  bool c2_pde_order();
  bool c3_oracle();
  bool c4_flatness();
  bool c5_frame();
  bool c6_reality();
  bool c7_curvature();
  bool c8_recovered_q();
  bool c9_family();
  bool c10_relation();
  bool c11_energy();
  bool c12_converse();
  bool c13_harmonicity();
  bool c14_weak_metric();

 private:
  VerifyReport& r_;
  std::optional<Fixture> umbilic_, linear_, spherical_;
};

bool Suite::c1_minkowski() {
  std::mt19937_64 rng(20260418);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> expo(-3.0, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double scale = std::pow(10.0, expo(rng));
    const HermMatrix a(scale * uni(rng), scale * uni(rng), scale * Complex(uni(rng), uni(rng)));
    const double norm2 = a.matrix().squaredNorm();
    worst = std::max(worst, std::abs(mink_inner(a, a) + a.det()) / (1.0 + norm2));
  }
  bool ok = r_.at_most("c01.minkowski.det_identity_scaled", worst, 1e-12);
  const std::array<const C2x2*, 4> e{&basis::e0(), &basis::e1(), &basis::e2(), &basis::e3()};
  double basis_defect = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double eta = a != b ? 0.0 : (a == 0 ? -1.0 : 1.0);
      const Complex v = mink_pairing(*e[a], *e[b]);
      basis_defect = std::max(basis_defect, std::abs(v - eta));
    }
  ok &= r_.at_most("c01.minkowski.basis_defect", basis_defect, 0.0);
  return ok;
}

bool Suite::c2_pde_order() {
  const double K = -0.75;
  const Errors e = per_level([&](int k) {
    const Grid g = Grid::inscribed(0.8, kLevels[k]);
    const BoundaryData bc = umbilic_trace(K, g);
    SolveOptions opts;
    RealField guess(g, std::log(4.0 / std::abs(K)));
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i)
        if (g.on_boundary(i, j)) guess(i, j) = bc.values(i, j);
    opts.initial_guess = guess;
    SolveReport sr;
    const MetricField m = solve_gauss(QDiff::zero(), K, g, bc, opts, &sr);
    r_.value("c02.pde.iterations.N" + std::to_string(kLevels[k]), sr.iterations);
    const MetricField seed = umbilic_seed(K, g);
    double err = 0.0;
    for (int n = 0; n < g.size(); ++n) err = std::max(err, std::abs(m.u.values()[n] - seed.u.values()[n]));
    return err;
  });
  bool ok = second_order("c02.pde.error", e);
  ok &= r_.at_most("c02.pde.error_final", e[2], 1e-4);
  return ok;
}

bool Suite::c3_oracle() {
  // Q = 1 on a thin horizontal strip with the ODE profile imposed on every
  // boundary node; the 2-D solution must not depend on y.
  const double K = -0.75, c = 1.0, a = 0.5;
  const int nx = 129, ny = 9;
  const double h = 2.0 * a / (nx - 1);
  const Grid g = Grid::rectangle(-a, a, -h * (ny - 1) / 2, h * (ny - 1) / 2, nx, ny);
  const double edge = std::log(c) + 0.5;
  const OdeProfile ode = ode_oracle(c, K, -a, a, nx, edge, edge);
  RealField bc(g);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) bc(i, j) = ode.u[i];
  const MetricField m = solve_gauss(QDiff::constant(c, QDomain::Plane), K, g, {bc});
  double err = 0.0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) err = std::max(err, std::abs(m.u(i, j) - ode.u[i]));
  r_.value("c03.oracle.ode_residual", ode.residual);
  r_.value("c03.oracle.u_center", ode.u[nx / 2]);
  double asymmetry = 0.0;
  for (int i = 0; i < nx; ++i) asymmetry = std::max(asymmetry, std::abs(ode.u[i] - ode.u[nx - 1 - i]));
  bool ok = r_.at_most("c03.oracle.max_difference", err, 1e-6);
  ok &= r_.at_most("c03.oracle.profile_asymmetry", asymmetry, 1e-9);
  ok &= r_.at_least("c03.oracle.center_above_log_c", ode.u[nx / 2] - std::log(c), 1e-6);
  return ok;
}

bool Suite::c4_flatness() {
  bool ok = true;
  const std::array<std::pair<const char*, Complex>, 3> lambdas{
      {{"1", Complex(1.0)}, {"i", Complex(0.0, 1.0)}, {"sqrt3", Complex(std::sqrt(3.0))}}};
  for (Fixture* fx : {&umbilic(), &linear()})
    for (const auto& [tag, lambda] : lambdas) {
      const Errors e = per_level([&](int k) {
        const Level& L = fx->levels[k];
        const RealField zc = zero_curvature_residual(build_uv(L.metric, derivative_field(L.metric), fx->q, lambda));
        return interior_max(zc, core_ring(L.grid));
      });
      ok &= second_order("c04.flatness." + fx->name + ".lambda_" + tag, e);
    }
  // p != 0: Q samples conj(z) with u = 0 on the unit-scale square.
  const Grid g = Grid::inscribed(0.5, 65);
  const MetricField m(RealField(g, 0.0), -0.75);
  const ComplexField qs = sample<Complex>(g, [](double x, double y) { return Complex(x, -y); });
  const MaurerCartanData mc = build_uv_general(m, derivative_field(m), qs, compute_p(m.u, qs), 1.0);
  ok &= r_.at_least("c04.flatness.control_p_nonzero", interior_max(zero_curvature_residual(mc), core_ring(g)), 1e-2);
  return ok;
}

namespace {

// exp of a traceless 2x2 matrix: cosh(s) id + sinh(s)/s A with s^2 = -det A.
C2x2 expm_traceless(const C2x2& a) {
  const Complex s = std::sqrt(-a.determinant());
  const Complex sh = std::abs(s) < 1e-8 ? Complex(1.0) + s * s / 6.0 : std::sinh(s) / s;
  return std::cosh(s) * C2x2::Identity() + sh * a;
}

}  // namespace

bool Suite::c5_frame() {
  bool ok = true;
  Fixture& fx = umbilic();
  double det_worst = 0.0, drift_fine = 0.0;
  const Errors path = per_level([&](int k) {
    const Level& L = fx.levels[k];
    const MaurerCartanData mc = build_uv(L.metric, derivative_field(L.metric), fx.q, 1.0);
    const FrameField rows = integrate_frame(mc, PathOrder::RowsThenColumns);
    const FrameField cols = integrate_frame(mc, PathOrder::ColumnsThenRows);
    det_worst = std::max({det_worst, det_residual(rows), det_residual(cols)});
    r_.value("c05.frame.det_drift_per_length.N" + std::to_string(kLevels[k]), rows.det_drift_per_length);
    drift_fine = rows.det_drift_per_length;
    return frame_difference(rows, cols);
  });
  ok &= r_.at_most("c05.frame.det_after_renormalization", det_worst, 1e-9);
  ok &= r_.at_most("c05.frame.det_drift_per_length_129", drift_fine, 1e-9);
  ok &= second_order("c05.frame.path_dependence", path);

  // Constant-balance data Q = c, u = log|c|: U and V commute, so the frame is
  // exp(x (U+V) + y i(U-V)).
  const Complex c = std::polar(1.0, 0.3);
  const std::array<int, 3> ns{17, 33, 65};
  Errors rk{};
  double commutator = 0.0;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const Grid g = Grid::square(1.0, ns[k]);
    const MetricField m(RealField(g, std::log(std::abs(c))), -0.75);
    const ComplexField qs(g, c);
    const DerivativeField d = derivative_field(m);
    const MaurerCartanData mc = build_uv_general(m, d, qs, ComplexField(g), std::polar(1.0, 0.7));
    const FrameField frame = integrate_frame(mc);
    const C2x2& U = mc.U(0, 0);
    const C2x2& V = mc.V(0, 0);
    const C2x2 ax = U + V;
    const C2x2 ay = kI * (U - V);
    double err = 0.0;
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i)
        err = std::max(err, (frame.psi(i, j) - expm_traceless(g.x(i) * ax + g.y(j) * ay)).norm());
    commutator = std::max(commutator, (U * V - V * U).norm());
    rk[k] = err;
    r_.value("c05.frame.rk4_error.N" + std::to_string(ns[k]), err);
  }
  r_.value("c05.frame.rk4_commutator", commutator);
  ok &= r_.within("c05.frame.rk4_ratio_17_33", rk[0] / rk[1], 12.0, 20.0);
  ok &= r_.within("c05.frame.rk4_ratio_33_65", rk[1] / rk[2], 12.0, 20.0);
  return ok;
}

bool Suite::c6_reality() {
  bool ok = true;
  struct Case {
    Fixture* fx;
    RealForm form;
    const char* tag;
  };
  for (const Case& cs : {Case{&linear(), RealForm::SU11, "su11"}, Case{&spherical(), RealForm::SU2, "su2"}}) {
    const Level& L = cs.fx->levels.back();
    const DerivativeField d = derivative_field(L.metric);
    const double l0 = lambda0(cs.fx->K);
    r_.value(std::string("c06.reality.") + cs.tag + ".lambda0", l0);
    const MaurerCartanData at0 = build_uv(L.metric, d, cs.fx->q, l0);
    const MaurerCartanData at1 = build_uv(L.metric, d, cs.fx->q, 1.0);
    const std::string k = std::string("c06.reality.") + cs.tag;
    ok &= r_.at_most(k + ".reality_at_lambda0", reality_residual(at0, cs.form), 1e-10);
    ok &= r_.at_most(k + ".unitarity_at_lambda0", frame_unitarity_residual(integrate_frame(at0), cs.form), 1e-6);
    ok &= r_.at_least(k + ".reality_at_1", reality_residual(at1, cs.form), 1e-2);
    ok &= r_.at_least(k + ".unitarity_at_1", frame_unitarity_residual(integrate_frame(at1), cs.form), 1e-2);
  }
  return ok;
}

bool Suite::c7_curvature() {
  bool ok = true;
  for (Fixture* fx : {&umbilic(), &linear(), &spherical()}) {
    const std::string k = "c07.curvature." + fx->name;
    const Errors e = per_level([&](int level) {
      const Bundle& b = fx->surface(level);
      return interior_max(deviation(b.K_num, fx->K), core_ring(fx->levels[level].grid));
    });
    const Bundle& fine = fx->surface(2);
    ok &= r_.at_most(k + ".max_deviation_129", interior_max(deviation(fine.K_num, fx->K)), 5e-3);
    ok &= r_.at_most(k + ".relative_stddev_129", stddev(fine.K_num, 1) / std::abs(fx->K), 1e-2);
    ok &= second_order(k + ".core_deviation", e);
  }
  return ok;
}

bool Suite::c8_recovered_q() {
  bool ok = true;
  for (Fixture* fx : {&linear(), &spherical()}) {
    const std::string k = "c08.recovered_q." + fx->name;
    Errors mismatch{}, dbar{};
    for (int level = 0; level < 3; ++level) {
      const RecoveredQ kl = recover_q(fx->surface(level).forms, fx->levels[level].qs);
      const int ring = core_ring(fx->levels[level].grid);
      mismatch[level] = interior_max(kl.mismatch, ring);
      dbar[level] = interior_max(kl.dbar, ring);
    }
    ok &= second_order(k + ".mismatch", mismatch);
    ok &= second_order(k + ".dbar", dbar);
  }
  // Boosting the frame by exp(phi e1) moves f a non-constant distance along n.
  Fixture& fx = linear();
  const Level& L = fx.levels.back();
  const FrameField frame = integrate_frame(build_uv(L.metric, derivative_field(L.metric), fx.q, 1.0));
  const RealField phi = sample<double>(L.grid, [](double x, double y) { return 0.1 * (x * x + y * y) + 0.05 * x; });
  const SurfaceData s = build_surface(boost_frame(frame, phi));
  const NumericForms forms = fundamental_forms_numeric(s);
  const RecoveredQ kl = recover_q(forms, L.qs);
  const int ring = core_ring(L.grid);
  ok &= r_.at_least("c08.recovered_q.control_dbar", interior_max(kl.dbar, ring), 1e-2);
  r_.value("c08.recovered_q.control_K_relative_stddev", stddev(curvature(forms), ring) / std::abs(fx.K));
  r_.value("c08.recovered_q.control_tangency", interior_max(legendrian_map(s).tangency, ring));
  return ok;
}

bool Suite::c9_family() {
  Fixture& fx = linear();
  Errors II{}, Q{};
  double K_dev = 0.0;
  for (int level = 0; level < 3; ++level) {
    const Level& L = fx.levels[level];
    const DerivativeField d = derivative_field(L.metric);
    const FamilyResult fam = associated_family(
        [&](Complex lambda) { return build_uv(L.metric, d, fx.q, lambda); }, 8, L.qs, core_ring(L.grid));
    II[level] = fam.II_deviation;
    Q[level] = fam.Q_mismatch;
    K_dev = fam.K_deviation;
  }
  bool ok = second_order("c09.family.II_deviation", II);
  ok &= second_order("c09.family.Q_transform", Q);
  ok &= r_.at_most("c09.family.K_deviation_129", K_dev, 1e-2);
  return ok;
}

bool Suite::c10_relation() {
  bool ok = true;
  for (Fixture* fx : {&linear(), &spherical()}) {
    const Errors e = per_level([&](int level) {
      const Level& L = fx->levels[level];
      const ClosedForms cf = closed_forms(L.metric.u, L.qs, L.metric.sigma);
      return interior_max(relation_residual(fx->surface(level).forms, cf.H, fx->K), core_ring(L.grid));
    });
    ok &= second_order("c10.relation." + fx->name, e);
  }
  // Q = 0: shape operator sigma id. The printed formula gives half of it.
  Fixture& fx = umbilic();
  const Level& L = fx.levels.back();
  const RealField H = mean_curvature(fx.surface(2).forms);
  const ClosedForms cf = closed_forms(L.metric.u, L.qs, L.metric.sigma);
  const int bi = L.grid.base_i(), bj = L.grid.base_j();
  r_.value("c10.relation.umbilic.sigma", L.metric.sigma);
  r_.value("c10.relation.umbilic.H_num", H(bi, bj));
  r_.value("c10.relation.umbilic.H_derived", cf.H(bi, bj));
  r_.value("c10.relation.umbilic.H_printed", cf.H_printed(bi, bj));
  r_.value("c10.relation.umbilic.H_num_over_printed", H(bi, bj) / cf.H_printed(bi, bj));
  ok &= r_.at_most("c10.relation.umbilic.H_num_vs_derived", interior_max(deviation(H, L.metric.sigma), core_ring(L.grid)), 1e-3);
  return ok;
}

bool Suite::c11_energy() {
  bool ok = true;
  for (Fixture* fx : {&linear(), &spherical()}) {
    const MapTarget target = fx->K < 0.0 ? MapTarget::H2 : MapTarget::S2;
    const double l0 = lambda0(fx->K);
    for (const auto& [tag, theta] : std::array<std::pair<const char*, double>, 3>{
             {{"0", 0.0}, {"pi_4", std::numbers::pi / 4}, {"pi_2", std::numbers::pi / 2}}}) {
      Errors dd{}, ddbar{};
      for (int level = 0; level < 3; ++level) {
        const Level& L = fx->levels[level];
        const FrameField frame =
            integrate_frame(build_uv(L.metric, derivative_field(L.metric), fx->q, std::polar(l0, theta)));
        const LagrangianMapField map = lagrangian_map(frame, target);
        const EnergyResult en = energy_check(map, L.metric.u, L.qs, fx->K);
        const int ring = core_ring(L.grid);
        dd[level] = interior_max(en.dd_residual, ring);
        ddbar[level] = interior_max(en.ddbar_residual, ring);
        if (level == 2) {
          const std::string k = "c11.energy." + fx->name + ".theta_" + tag;
          ok &= r_.at_most(k + ".L_squared", map.square_residual, 1e-10);
          ok &= r_.at_least(k + ".min_jacobian", min_jacobian(map), 1e-6);
        }
      }
      const std::string k = "c11.energy." + fx->name + ".theta_" + tag;
      ok &= second_order(k + ".dd", dd);
      ok &= second_order(k + ".ddbar", ddbar);
    }
  }
  return ok;
}

bool Suite::c12_converse() {
  bool ok = true;
  double worst = 0.0;
  for (double K : {-0.9, -0.5, -0.25, -0.1, 0.5, 3.0}) {
    const MapTarget target = K < 0.0 ? MapTarget::H2 : MapTarget::S2;
    worst = std::max(worst, std::abs(converse_curvature(lambda0(K), target) - K));
  }
  ok &= r_.at_most("c12.converse.roundtrip_K", worst, 1e-12);
  const double l = std::sqrt(3.0);
  ok &= r_.at_most("c12.converse.example_H2", std::abs(converse_curvature(l, MapTarget::H2) + 0.75), 1e-12);
  ok &= r_.at_most("c12.converse.example_S2", std::abs(converse_curvature(l, MapTarget::S2) - 3.0), 1e-12);

  // Seed frame at lambda1 reconstructs a surface of the predicted curvature.
  for (const MapTarget target : {MapTarget::H2, MapTarget::S2}) {
    const std::string k = std::string("c12.converse.") + (target == MapTarget::H2 ? "H2" : "S2");
    const Complex lambda1 = std::polar(l, 0.3);
    double K = 0.0;
    const Errors e = per_level([&](int level) {
      const Grid g = Grid::inscribed(0.5, kLevels[level]);
      const HarmonicSeed seed = solve_seed(QDiff::polynomial({0.1, 0.2}), target, g);
      const ConverseResult cv = converse_rescale(seed, lambda1);
      K = cv.K;
      const RealField K_num = curvature(fundamental_forms_numeric(build_surface(integrate_frame(seed_frame_data(seed, lambda1)))));
      return interior_max(deviation(K_num, cv.K), core_ring(g));
    });
    r_.value(k + ".K", K);
    ok &= second_order(k + ".K_num_deviation", e);
  }
  return ok;
}

bool Suite::c13_harmonicity() {
  bool ok = true;
  for (Fixture* fx : {&umbilic(), &linear()}) {
    const Errors e = per_level([&](int level) {
      const Level& L = fx->levels[level];
      const MaurerCartanData mc = build_uv(L.metric, derivative_field(L.metric), fx->q, lambda0(fx->K));
      const HarmonicityResult hr = harmonicity_residual(mc, L.metric.u, L.qs, L.metric.sigma);
      return interior_max(hr.two_form, core_ring(L.grid));
    });
    ok &= second_order("c13.harmonicity." + fx->name, e);
  }
  const Grid g = Grid::inscribed(0.5, 65);
  const MetricField m(RealField(g, 0.0), -0.75);
  const ComplexField qs = sample<Complex>(g, [](double x, double y) { return Complex(x, -y); });
  const ComplexField p = compute_p(m.u, qs);
  const MaurerCartanData mc = build_uv_general(m, derivative_field(m), qs, p, lambda0(-0.75));
  const HarmonicityResult hr = harmonicity_residual(mc, m.u, qs, m.sigma);
  ok &= r_.at_least("c13.harmonicity.control_conj_z", interior_max(hr.two_form, core_ring(g)), 1e-2);
  ok &= r_.at_most("c13.harmonicity.bracket_offdiagonal", hr.bracket_p, 1e-12);
  ok &= r_.at_most("c13.harmonicity.p_at_origin", std::abs(p(g.base_i(), g.base_j()) + 0.5), 1e-12);
  return ok;
}

bool Suite::c14_weak_metric() {
  bool ok = true;
  for (Fixture* fx : {&umbilic(), &linear()}) {
    const Errors e = per_level([&](int level) {
      const Level& L = fx->levels[level];
      const RealField res = weak_metric_residual(fx->surface(level).forms, weak_metric(L.metric.u, L.qs), fx->K);
      return interior_max(res, core_ring(L.grid));
    });
    ok &= second_order("c14.weak." + fx->name, e);
  }
  // Radial lengths of the umbilic seed along [0, r] on thin strips.
  const double K = -0.75;
  double previous = 0.0;
  for (const double r : {0.6, 0.8, 0.9}) {
    const int nx = 513, ny = 9;
    const double h = r / (nx - 1);
    const Grid g = Grid::rectangle(0.0, r, -h * (ny - 1) / 2, h * (ny - 1) / 2, nx, ny);
    const MetricField seed = umbilic_seed(K, g);
    const RadialLength len = radial_weak_length(seed.u, ComplexField(g), 1, 0);
    const double closed = 2.0 / std::sqrt(std::abs(K)) * std::atanh(r);
    const std::string k = "c14.weak.radial_r" + std::to_string(static_cast<int>(std::lround(r * 10)));
    r_.value(k + ".closed_form", closed);
    r_.value(k + ".weak", len.weak);
    r_.value(k + ".conformal", len.conformal);
    ok &= r_.at_most(k + ".conformal_vs_closed", std::abs(len.conformal - closed), 1e-3);
    ok &= r_.at_most(k + ".weak_vs_sqrt2_closed", std::abs(len.weak - std::sqrt(2.0) * closed), 1e-3);
    ok &= r_.at_least(k + ".increase", len.weak - previous, 1e-9);
    previous = len.weak;
  }
  return ok;
}

struct Named {
  int id;
  const char* name;
  bool (Suite::*run)();
};

constexpr std::array<Named, 14> kCriteria{{
    {1, "minkowski model", &Suite::c1_minkowski},
    {2, "pde order", &Suite::c2_pde_order},
    {3, "oracle equivalence", &Suite::c3_oracle},
    {4, "flatness", &Suite::c4_flatness},
    {5, "frame integrity", &Suite::c5_frame},
    {6, "reality conditions", &Suite::c6_reality},
    {7, "curvature constancy", &Suite::c7_curvature},
    {8, "recovered differential", &Suite::c8_recovered_q},
    {9, "associated family", &Suite::c9_family},
    {10, "fundamental form relation", &Suite::c10_relation},
    {11, "energy formulas", &Suite::c11_energy},
    {12, "converse round trip", &Suite::c12_converse},
    {13, "harmonicity residual", &Suite::c13_harmonicity},
    {14, "weak metric", &Suite::c14_weak_metric},
}};

AcceptanceResult run_once() {
  AcceptanceResult out;
  Suite suite(out.report);
  for (const Named& c : kCriteria) {
    bool pass = false;
    try {
      pass = (suite.*c.run)();
    } catch (const std::exception& e) {
      std::ostringstream key;
      key << 'c' << (c.id < 10 ? "0" : "") << c.id << ".error";
      out.report.failure(key.str(), e.what());
    }
    out.criteria.push_back({c.id, c.name, pass});
  }
  return out;
}

}  // namespace

AcceptanceResult run_acceptance() {
  AcceptanceResult first = run_once();
  const AcceptanceResult second = run_once();
  const bool same = first.report.render() == second.report.render();
  first.report.info("c15.determinism.rerun", same ? "identical" : "differs");
  if (!same) first.report.failure("c15.determinism.status", "second run rendered a different report");
  first.criteria.push_back({15, "determinism", same});
  return first;
}

std::string summary_lines(const AcceptanceResult& result) {
  std::ostringstream os;
  for (const CriterionResult& c : result.criteria)
    os << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << "  " << c.name << '\n';
  return os.str();
}

}  // namespace cgc

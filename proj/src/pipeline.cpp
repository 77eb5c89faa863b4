#include "cgc/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "cgc/error.hpp"
#include "cgc/io.hpp"

namespace cgc {

const char* to_string(Stage stage) {
  switch (stage) {
    case Stage::Solve: return "solve";
    case Stage::Frame: return "frame";
    case Stage::Mesh: return "mesh";
    case Stage::Family: return "family";
    case Stage::GaussMap: return "gaussmap";
    case Stage::Converse: return "converse";
  }
  return "unknown";
}

namespace {

std::string complex_text(Complex c) { return "[" + format_double(c.real()) + ", " + format_double(c.imag()) + "]"; }

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

RealField deviation(const RealField& f, double target) {
  RealField out = f;
  for (double& v : out.values()) v = std::abs(v - target);
  return out;
}

class Runner {
 public:
  Runner(const JobConfig& cfg, PipelineResult& result)
      : cfg_(cfg), r_(result.report), written_(result.written), grid_(cfg.grid()), q_(cfg.q()) {
    fd_limit_ = cfg.fd_tolerance * grid_.h() * grid_.h();
    core_ = core_ring(grid_);
  }

  void header(Stage stage) {
    r_.info("job.stage", to_string(stage));
    r_.info("job.mode", cfg_.mode == JobMode::Forward ? "forward" : "converse");
    r_.value("job.K", cfg_.K);
    r_.value("grid.nx", grid_.nx());
    r_.value("grid.ny", grid_.ny());
    r_.value("grid.h", grid_.h());
    r_.value("grid.x_min", grid_.x_min());
    r_.value("grid.x_max", grid_.x_max());
    r_.value("grid.y_min", grid_.y_min());
    r_.value("grid.y_max", grid_.y_max());
    r_.value("grid.core_ring", core_);
    r_.value("tol.fd_limit", fd_limit_);
    std::string qtext;
    for (const Complex c : cfg_.q_coefficients) qtext += (qtext.empty() ? "" : " ") + complex_text(c);
    r_.info("job.Q", qtext);
    for (const std::string& w : q_.warnings()) r_.info("job.warning", w);
  }

  std::string path(const std::string& name) {
    const std::string p = (std::filesystem::path(cfg_.out) / name).string();
    written_.push_back(p);
    return p;
  }

  void solve() {
    BoundaryData bc{RealField(grid_)};
    switch (cfg_.bc) {
      case BoundaryMode::Heuristic: bc = heuristic_boundary(q_, cfg_.K, grid_); break;
      case BoundaryMode::UmbilicExact: bc = umbilic_trace(cfg_.K, grid_); break;
      case BoundaryMode::File: bc = read_boundary_csv(cfg_.bc_file, grid_); break;
    }
    SolveOptions opts;
    opts.tolerance = cfg_.gauss_tolerance;
    opts.max_iterations = cfg_.max_iterations;
    SolveReport sr;
    metric_.emplace(solve_gauss(q_, cfg_.K, grid_, bc, opts, &sr));
    r_.value("solve.sigma", metric_->sigma);
    r_.value("solve.iterations", sr.iterations);
    r_.value("solve.halvings", sr.halvings);
    r_.info("solve.linear_solver", sr.used_direct_solver ? "sparse-lu" : "conjugate-gradient");
    const RealField res = abs_of(gauss_residual(*metric_, q_));
    r_.stats("residual.gauss", res);
    r_.at_most("check.gauss_residual", interior_max(res), cfg_.gauss_tolerance);
    write_u_csv(path("u.csv"), metric_->u);
  }

  std::vector<Complex> lambdas() const {
    std::vector<Complex> ls = cfg_.lambdas;
    if (ls.empty()) ls.push_back(1.0);
    return ls;
  }

  std::optional<RealForm> real_form_at(Complex lambda) const {
    const double l0 = lambda0(cfg_.K);
    if (std::abs(std::abs(lambda) - l0) > 1e-12 * l0) return std::nullopt;
    return cfg_.K < 0.0 ? RealForm::SU11 : RealForm::SU2;
  }

  FrameField frame_at(Complex lambda, const std::string& tag) {
    const MaurerCartanData mc = build_uv(*metric_, derivative_field(*metric_), q_, lambda);
    const std::string k = "lambda." + tag;
    r_.info(k + ".value", complex_text(lambda));
    const RealField zc = zero_curvature_residual(mc);
    r_.stats(k + ".zero_curvature", zc);
    r_.at_most("check." + tag + ".zero_curvature_core", interior_max(zc, core_), fd_limit_);
    FrameField frame = integrate_frame(mc);
    r_.value(k + ".det_drift_step", frame.max_det_drift);
    r_.value(k + ".det_drift_per_length", frame.det_drift_per_length);
    for (const std::string& w : frame.warnings) r_.info(k + ".warning", w);
    r_.at_most("check." + tag + ".det", det_residual(frame), 1e-9);
    if (const auto form = real_form_at(lambda)) {
      r_.at_most("check." + tag + ".reality", reality_residual(mc, *form), 1e-10);
      r_.at_most("check." + tag + ".unitarity", frame_unitarity_residual(frame, *form), 1e-6);
    } else {
      r_.skipped(k + ".reality", "|lambda| != lambda0");
    }
    write_frame_csv(path("frame_" + tag + ".csv"), frame);
    return frame;
  }

  void frames(bool meshes) {
    const auto ls = lambdas();
    for (std::size_t k = 0; k < ls.size(); ++k) {
      const std::string tag = std::to_string(k);
      const FrameField frame = frame_at(ls[k], tag);
      if (!meshes) continue;
      if (std::abs(std::abs(ls[k]) - 1.0) > 1e-12) {
        r_.skipped("lambda." + tag + ".surface", "|lambda| != 1 is not an associated-family member");
        continue;
      }
      surface(frame, tag, 1.0 / (ls[k] * ls[k]));
    }
    if (cfg_.at_lambda0) {
      frame_at(std::polar(lambda0(cfg_.K), cfg_.theta), "lambda0");
    } else {
      r_.skipped("lambda.lambda0", "not requested");
    }
  }

  void surface(const FrameField& frame, const std::string& tag, Complex q_factor) {
    const SurfaceData s = build_surface(frame);
    const std::string k = "surface." + tag;
    r_.value(k + ".det_f", s.det_residual);
    r_.value(k + ".f_dot_n", s.fn_residual);
    r_.value(k + ".n_dot_n", s.nn_residual);
    const NumericForms forms = fundamental_forms_numeric(s);
    const RealField K_num = curvature(forms);
    const RealField H_num = mean_curvature(forms);
    const ComplexField qs = sample_q(q_, grid_);
    ComplexField q_expected(grid_);
    for (int n = 0; n < grid_.size(); ++n) q_expected.values()[n] = q_factor * qs.values()[n];
    const ClosedForms cf = closed_forms(metric_->u, qs, metric_->sigma);

    r_.stats(k + ".K_deviation", deviation(K_num, cfg_.K));
    r_.at_most("check." + tag + ".K_max_deviation", interior_max(deviation(K_num, cfg_.K)), 5e-3);
    r_.at_most("check." + tag + ".K_relative_stddev", stddev(K_num, 1) / std::abs(cfg_.K), 1e-2);
    const RecoveredQ kl = recover_q(forms, q_expected);
    r_.stats(k + ".q_recovery_dbar", kl.dbar);
    r_.stats(k + ".q_recovery_mismatch", kl.mismatch);
    r_.at_most("check." + tag + ".q_recovery_dbar_core", interior_max(kl.dbar, core_), fd_limit_);
    r_.at_most("check." + tag + ".q_recovery_mismatch_core", interior_max(kl.mismatch, core_), fd_limit_);
    const RealField rel = relation_residual(forms, cf.H, cfg_.K);
    r_.stats(k + ".relation", rel);
    r_.at_most("check." + tag + ".relation_core", interior_max(rel, core_), fd_limit_);
    const int bi = grid_.base_i(), bj = grid_.base_j();
    r_.value(k + ".H_num_at_base", H_num(bi, bj));
    r_.value(k + ".H_closed_at_base", cf.H(bi, bj));
    r_.value(k + ".H_printed_at_base", cf.H_printed(bi, bj));
    r_.value(k + ".H_closed_over_printed", cf.H(bi, bj) / cf.H_printed(bi, bj));
    const RealField coeff = weak_metric(metric_->u, qs);
    RealField weak = weak_metric_residual(forms, coeff, cfg_.K);
    r_.stats(k + ".weak_metric", weak);
    // relative to the coefficient, which reaches O(10^2) near the rim
    for (int n = 0; n < grid_.size(); ++n) weak.values()[n] /= coeff.values()[n];
    r_.stats(k + ".weak_metric_relative", weak);
    r_.at_most("check." + tag + ".weak_metric_relative_core", interior_max(weak, core_), fd_limit_);
    const LegendrianMapField leg = legendrian_map(s);
    r_.stats(k + ".tangency", leg.tangency);

    write_obj(path("mesh_" + tag + ".obj"), s);
    write_ply(path("mesh_" + tag + ".ply"), s);
    write_sidecar_csv(path("mesh_" + tag + "_diagnostics.csv"), K_num, H_num, forms.Q);
  }

  void family() {
    const MetricField& m = *metric_;
    const DerivativeField d = derivative_field(m);
    const QDiff& q = q_;
    const FamilyResult fam = associated_family(
        [&](Complex lambda) { return build_uv(m, d, q, lambda); }, cfg_.family, sample_q(q_, grid_), core_);
    r_.value("family.count", cfg_.family);
    r_.at_most("check.family.II_deviation_core", fam.II_deviation, fd_limit_);
    r_.at_most("check.family.K_deviation_core", fam.K_deviation, 1e-2);
    r_.at_most("check.family.Q_transform_core", fam.Q_mismatch, fd_limit_);
    for (std::size_t k = 0; k < fam.members.size(); ++k)
      write_obj(path("family_" + std::to_string(k) + ".obj"), fam.members[k].surface);
  }

  void gaussmap() {
    const double l0 = lambda0(cfg_.K);
    r_.value("gaussmap.lambda0", l0);
    const Complex lambda = std::polar(l0, cfg_.theta);
    const FrameField frame = frame_at(lambda, "lambda0");
    const MapTarget target = cfg_.K < 0.0 ? MapTarget::H2 : MapTarget::S2;
    const LagrangianMapField L = lagrangian_map(frame, target);
    r_.info("gaussmap.target", target == MapTarget::H2 ? "H2" : "S2");
    r_.at_most("check.gaussmap.L_squared", L.square_residual, 1e-10);
    r_.at_least("check.gaussmap.min_jacobian", min_jacobian(L), 1e-12);
    const ComplexField qs = sample_q(q_, grid_);
    const EnergyResult en = energy_check(L, metric_->u, qs, cfg_.K);
    r_.stats("gaussmap.energy_dd", en.dd_residual);
    r_.stats("gaussmap.energy_ddbar", en.ddbar_residual);
    r_.at_most("check.gaussmap.energy_dd_core", interior_max(en.dd_residual, core_), fd_limit_);
    r_.at_most("check.gaussmap.energy_ddbar_core", interior_max(en.ddbar_residual, core_), fd_limit_);
    const MaurerCartanData mc = build_uv(*metric_, derivative_field(*metric_), q_, lambda);
    const HarmonicityResult hr = harmonicity_residual(mc, metric_->u, qs, metric_->sigma);
    r_.stats("gaussmap.harmonicity", hr.two_form);
    r_.at_most("check.gaussmap.harmonicity_core", interior_max(hr.two_form, core_), fd_limit_);
    r_.value("gaussmap.bracket_offdiagonal", hr.bracket_p);
    write_gaussmap_csv(path("gaussmap.csv"), L);
  }

  void converse() {
    const MapTarget target = cfg_.target;
    const HarmonicSeed seed = solve_seed(q_, target, grid_);
    const ConverseResult cv = converse_rescale(seed, cfg_.lambda1);
    r_.info("converse.target", target == MapTarget::H2 ? "H2" : "S2");
    r_.info("converse.lambda1", complex_text(cfg_.lambda1));
    r_.value("converse.scale", cv.scale);
    r_.value("converse.K", cv.K);
    r_.at_most("check.converse.roundtrip", cv.roundtrip, 1e-12);
    const RealField res = abs_of(gauss_residual(cv.u, cv.K, abs_sq(sample_q(cv.q, grid_))));
    r_.stats("converse.gauss_residual", res);
    r_.at_most("check.converse.gauss_residual", interior_max(res), 10.0 * cfg_.gauss_tolerance);
    const MaurerCartanData mc = seed_frame_data(seed, cfg_.lambda1);
    const RealField zc = zero_curvature_residual(mc);
    r_.stats("converse.zero_curvature", zc);
    r_.at_most("check.converse.zero_curvature_core", interior_max(zc, core_), fd_limit_);
    const FrameField frame = integrate_frame(mc);
    r_.at_most("check.converse.det", det_residual(frame), 1e-9);
    const SurfaceData s = build_surface(frame);
    const NumericForms forms = fundamental_forms_numeric(s);
    const RealField K_num = curvature(forms);
    r_.stats("converse.K_deviation", deviation(K_num, cv.K));
    r_.at_most("check.converse.K_max_deviation", interior_max(deviation(K_num, cv.K)), 5e-3);
    write_u_csv(path("u.csv"), cv.u);
    write_frame_csv(path("frame_converse.csv"), frame);
    write_obj(path("mesh_converse.obj"), s);
    write_sidecar_csv(path("mesh_converse_diagnostics.csv"), K_num, mean_curvature(forms), forms.Q);
  }

  static RealField abs_of(RealField f) {
    for (double& v : f.values()) v = std::abs(v);
    return f;
  }
  static RealField abs_sq(const ComplexField& f) {
    RealField out(f.grid());
    for (int k = 0; k < f.grid().size(); ++k) out.values()[k] = std::norm(f.values()[k]);
    return out;
  }

 private:
  const JobConfig& cfg_;
  VerifyReport& r_;
  std::vector<std::string>& written_;
  Grid grid_;
  QDiff q_;
  std::optional<MetricField> metric_;
  double fd_limit_ = 0.0;
  int core_ = 1;
};

}  // namespace

PipelineResult run_pipeline(const JobConfig& cfg, Stage stage) {
  PipelineResult result;
  const Stage effective = cfg.mode == JobMode::Converse ? Stage::Converse : stage;
  std::string current = "config";
  try {
    validate_config(cfg);
    std::filesystem::create_directories(cfg.out);
    Runner run(cfg, result);
    run.header(effective);
    if (effective == Stage::Converse) {
      current = "converse";
      run.converse();
      return result;
    }
    current = "solve";
    run.solve();
    switch (effective) {
      case Stage::Frame: current = "frame"; run.frames(false); break;
      case Stage::Mesh: current = "mesh"; run.frames(true); break;
      case Stage::Family: current = "family"; run.family(); break;
      case Stage::GaussMap: current = "gaussmap"; run.gaussmap(); break;
      default: break;
    }
  } catch (const std::exception& e) {
    result.report.failure("stage." + current, e.what());
  }
  return result;
}

}  // namespace cgc

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"

#include "cgc/config.hpp"
#include "cgc/error.hpp"
#include "cgc/io.hpp"
#include "cgc/pipeline.hpp"
#include "cgc/report.hpp"

using namespace cgc;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  std::random_device rd;
  const fs::path p = fs::temp_directory_path() / ("cgc_test_" + name + "_" + std::to_string(rd()));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<ErrorCode, std::string> error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  FAIL("expected cgc::Error");
  return {ErrorCode::IOError, ""};
}

bool has_line(const std::string& text, const std::string& line) {
  return text.find(line + "\n") != std::string::npos;
}
}  // namespace

TEST_CASE("minimal config is valid") {
  const JobConfig cfg = parse_config("K = -0.75\nQ = [[0, 0]]\nN = 65\nr = 0.8\n");
  CHECK(cfg.K == -0.75);
  CHECK(cfg.N == 65);
  CHECK(*cfg.radius == 0.8);
  CHECK(cfg.q().kind() == QKind::Zero);
  CHECK(cfg.grid().nx() == 65);
  CHECK(cfg.grid().max_modulus() == doctest::Approx(0.8));
}

TEST_CASE("config values and comments") {
  const JobConfig cfg = parse_config(
      "# job\nK = 3\nQ = [[0.1, 0], [0, 0.2]]  # z coefficient imaginary\nN = 33\nradius = 0.5\n"
      "lambdas = [[1, 0], [0, 1], [-1, 0]]\nbc = heuristic\nat_lambda0 = true\ntheta = 0.25\n"
      "tol.fd = 800\nout = results\n");
  CHECK(cfg.K == 3.0);
  CHECK(cfg.q_coefficients.size() == 2);
  CHECK(cfg.q_coefficients[1] == Complex(0.0, 0.2));
  CHECK(cfg.lambdas.size() == 3);
  CHECK(cfg.lambdas[1] == kI);
  CHECK(cfg.at_lambda0);
  CHECK(cfg.theta == 0.25);
  CHECK(cfg.fd_tolerance == 800.0);
  CHECK(cfg.out == "results");
}

TEST_CASE("config validation errors") {
  auto [c1, m1] = error_of([] { parse_config("K = -1.5\n"); });
  CHECK(c1 == ErrorCode::ValidationError);
  CHECK(m1.find("K") != std::string::npos);
  auto [c2, m2] = error_of([] { parse_config("N = 64\n"); });
  CHECK(c2 == ErrorCode::ValidationError);
  CHECK(m2.find("N must be odd") != std::string::npos);
  CHECK(error_of([] { parse_config("K = 0\n"); }).first == ErrorCode::ValidationError);
  CHECK(error_of([] { parse_config("radius = 1.2\n"); }).first == ErrorCode::ValidationError);
  CHECK(error_of([] { parse_config("colour = red\n"); }).second.find("unknown key") != std::string::npos);
  CHECK(error_of([] { parse_config("bc = umbilic-exact\nQ = [[1, 0]]\n"); }).first == ErrorCode::ValidationError);
  CHECK(error_of([] { parse_config("lambdas = [[0, 0]]\n"); }).first == ErrorCode::ValidationError);
}

TEST_CASE("config parse errors") {
  CHECK(error_of([] { parse_config("K -0.75\n"); }).first == ErrorCode::ParseError);
  CHECK(error_of([] { parse_config("K =\n"); }).first == ErrorCode::ParseError);
  CHECK(error_of([] { parse_config("K = 1\nK = 2\n"); }).first == ErrorCode::ParseError);
  CHECK(error_of([] { parse_config("r = 0.5\nradius = 0.6\n"); }).first == ErrorCode::ParseError);
  CHECK(error_of([] { parse_config("Q = [[0, 0\n"); }).first == ErrorCode::ParseError);
  CHECK(error_of([] { load_config("/nonexistent/job.cfg"); }).first == ErrorCode::IOError);
}

TEST_CASE("report rendering and exit semantics") {
  VerifyReport r;
  r.info("job.stage", "mesh");
  r.value("x", 0.1);
  CHECK(r.at_most("a", 1e-3, 1e-2));
  CHECK(r.at_least("b", 2.0, 1.0));
  CHECK(r.within("c", 4.0, 3.0, 5.0));
  r.skipped("lambda.lambda0", "not requested");
  CHECK(r.all_pass());
  std::string text = r.render();
  CHECK(has_line(text, "x = 0.10000000000000001"));
  CHECK(has_line(text, "a.status = pass"));
  CHECK(has_line(text, "lambda.lambda0 = skipped (not requested)"));
  CHECK(has_line(text, "summary.status = pass"));

  CHECK_FALSE(r.at_most("d", 0.5, 0.1));
  CHECK_FALSE(r.at_most("nan", std::nan(""), 1.0));
  r.failure("stage.solve", "boom");
  CHECK_FALSE(r.all_pass());
  CHECK(r.failed_keys() == std::vector<std::string>{"d", "nan", "stage.solve"});
  text = r.render();
  CHECK(has_line(text, "d.status = fail"));
  CHECK(has_line(text, "summary.status = fail"));
  CHECK(text.find("summary.failed_keys") != std::string::npos);
  CHECK(text.find("stage.solve = error (boom)") != std::string::npos);

  const fs::path dir = scratch("report");
  emit_report(r, (dir / "r.txt").string());
  CHECK(slurp(dir / "r.txt") == text);
  CHECK(error_of([&] { emit_report(r, (dir / "missing" / "r.txt").string()); }).first == ErrorCode::IOError);
  fs::remove_all(dir);
}

TEST_CASE("number formatting round trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02e23}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("u csv round trip through boundary reader") {
  const fs::path dir = scratch("csv");
  const Grid g = Grid::inscribed(0.8, 9);
  const MetricField m = umbilic_seed(-0.75, g);
  write_u_csv((dir / "u.csv").string(), m.u);
  const std::string text = slurp(dir / "u.csv");
  CHECK(text.rfind("i,j,x,y,u\n", 0) == 0);
  const BoundaryData bc = read_boundary_csv((dir / "u.csv").string(), g);
  CHECK(bc.values(0, 0) == m.u(0, 0));
  CHECK(bc.values(8, 3) == m.u(8, 3));

  std::ofstream((dir / "partial.csv").string()) << "i,j,x,y,u\n0,0,0,0,1\n";
  CHECK(error_of([&] { read_boundary_csv((dir / "partial.csv").string(), g); }).first == ErrorCode::ValidationError);
  std::ofstream((dir / "bad.csv").string()) << "i,j,x,y,u\n0,0,0\n";
  CHECK(error_of([&] { read_boundary_csv((dir / "bad.csv").string(), g); }).first == ErrorCode::ParseError);
  fs::remove_all(dir);
}

TEST_CASE("mesh writers") {
  const fs::path dir = scratch("mesh");
  const MetricField m = umbilic_seed(-0.75, Grid::inscribed(0.8, 9));
  const SurfaceData s = build_surface(integrate_frame(build_uv(m, derivative_field(m), QDiff::zero(), 1.0)));
  write_obj((dir / "m.obj").string(), s);
  write_ply((dir / "m.ply").string(), s);
  const std::string obj = slurp(dir / "m.obj");
  int v = 0, f = 0;
  std::istringstream in(obj);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++f;
  }
  CHECK(v == 81);
  CHECK(f == 2 * 8 * 8);
  const std::string ply = slurp(dir / "m.ply");
  CHECK(ply.rfind("ply\n", 0) == 0);
  CHECK(ply.find("element vertex 81") != std::string::npos);
  CHECK(ply.find("element face 128") != std::string::npos);
  CHECK(error_of([&] { write_obj((dir / "no" / "m.obj").string(), s); }).first == ErrorCode::IOError);
  fs::remove_all(dir);
}

TEST_CASE("pipeline mesh stage with three spectral values") {
  const fs::path dir = scratch("pipeline");
  JobConfig cfg = parse_config("K = -0.75\nQ = [[0, 0]]\nN = 33\nr = 0.8\nbc = umbilic-exact\n"
                               "lambdas = [[1, 0], [0, 1], [-1, 0]]\n");
  cfg.out = dir.string();
  const PipelineResult res = run_pipeline(cfg, Stage::Mesh);
  const std::string text = res.report.render();
  INFO(text);
  CHECK(res.report.all_pass());
  for (const char* name : {"u.csv", "mesh_0.obj", "mesh_1.obj", "mesh_2.obj", "mesh_1.ply", "mesh_2_diagnostics.csv"})
    CHECK(fs::exists(dir / name));
  CHECK(has_line(text, "lambda.lambda0 = skipped (not requested)"));
  CHECK(text.find("surface.1.H_closed_over_printed = 2") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("pipeline family and gauss map stages") {
  const fs::path dir = scratch("family");
  JobConfig cfg = parse_config("K = -0.75\nQ = [[0, 0], [0.1, 0]]\nN = 33\nr = 0.8\nfamily = 4\n");
  cfg.out = dir.string();
  const PipelineResult fam = run_pipeline(cfg, Stage::Family);
  INFO(fam.report.render());
  CHECK(fam.report.all_pass());
  CHECK(fs::exists(dir / "family_3.obj"));
  const PipelineResult gm = run_pipeline(cfg, Stage::GaussMap);
  INFO(gm.report.render());
  CHECK(gm.report.all_pass());
  CHECK(slurp(dir / "gaussmap.csv").rfind("i,j,x,y,re(w),im(w)\n", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("pipeline converse stage") {
  const fs::path dir = scratch("converse");
  JobConfig cfg = parse_config("mode = converse\ntarget = H2\nlambda1 = [1.7320508075688772, 0]\n"
                               "Q = [[0.1, 0], [0.2, 0]]\nN = 33\nr = 0.5\n");
  cfg.out = dir.string();
  const PipelineResult res = run_pipeline(cfg, Stage::Solve);
  const std::string text = res.report.render();
  INFO(text);
  CHECK(res.report.all_pass());
  CHECK(has_line(text, "job.stage = converse"));
  CHECK(fs::exists(dir / "mesh_converse.obj"));
  fs::remove_all(dir);
}

TEST_CASE("stage failures are reported, not thrown") {
  JobConfig cfg = parse_config("K = -0.75\nN = 9\nbc = file\nbc_file = /nonexistent/u.csv\n");
  const fs::path dir = scratch("fail");
  cfg.out = dir.string();
  const PipelineResult res = run_pipeline(cfg, Stage::Solve);
  CHECK_FALSE(res.report.all_pass());
  CHECK(res.report.failed_keys() == std::vector<std::string>{"stage.solve"});
  fs::remove_all(dir);
}

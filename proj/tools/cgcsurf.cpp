#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cgc/config.hpp"
#include "cgc/error.hpp"
#include "cgc/pipeline.hpp"
#include "cgc/verify.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::vector<std::string> lambdas;
  bool at_lambda0 = false;
  int grid = 0;
  std::string seed;
  std::string report;
};

cgc::Complex parse_lambda(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw cgc::Error(cgc::ErrorCode::ParseError, "cli_io", "--lambda expects RE,IM, got " + text);
  }
}

// Built-in jobs for --seed.
cgc::JobConfig seed_config(const std::string& seed) {
  cgc::JobConfig cfg;
  if (seed == "umbilic") {
    cfg.K = -0.75;
    cfg.q_coefficients = {0.0};
    cfg.radius = 0.8;
    cfg.bc = cgc::BoundaryMode::UmbilicExact;
  } else {
    // Constant differential on a square off the unit disk.
    cfg.K = -0.75;
    cfg.q_coefficients = {1.0};
    cfg.domain = cgc::QDomain::Plane;
    cfg.rect = {-0.5, 0.5, -0.5, 0.5};
  }
  return cfg;
}

cgc::JobConfig assemble(const Options& o, cgc::Stage stage) {
  cgc::JobConfig cfg;
  if (!o.config.empty()) cfg = cgc::load_config(o.config);
  else if (!o.seed.empty()) cfg = seed_config(o.seed);
  if (!o.out.empty()) cfg.out = o.out;
  if (!o.lambdas.empty()) {
    cfg.lambdas.clear();
    for (const std::string& l : o.lambdas) cfg.lambdas.push_back(parse_lambda(l));
  }
  if (o.at_lambda0) cfg.at_lambda0 = true;
  if (o.grid > 0) cfg.N = o.grid;
  if (stage == cgc::Stage::Converse) cfg.mode = cgc::JobMode::Converse;
  cgc::validate_config(cfg);
  return cfg;
}

int run_stage(const Options& o, cgc::Stage stage) {
  const cgc::JobConfig cfg = assemble(o, stage);
  const cgc::PipelineResult result = cgc::run_pipeline(cfg, stage);
  const std::string report_path =
      o.report.empty() ? (std::filesystem::path(cfg.out) / "report.txt").string() : o.report;
  if (!o.report.empty() && std::filesystem::path(o.report).has_parent_path())
    std::filesystem::create_directories(std::filesystem::path(o.report).parent_path());
  cgc::emit_report(result.report, report_path);
  for (const std::string& p : result.written) std::cout << "wrote " << p << '\n';
  std::cout << "report " << report_path << '\n';
  const auto failed = result.report.failed_keys();
  for (const std::string& k : failed) std::cerr << "failed: " << k << '\n';
  return failed.empty() ? 0 : 1;
}

int run_verify(const Options& o) {
  const cgc::AcceptanceResult result = cgc::run_acceptance();
  const std::string path = o.report.empty() ? "verify_report.txt" : o.report;
  cgc::emit_report(result.report, path);
  std::cout << cgc::summary_lines(result);
  std::cout << "report " << path << '\n';
  const auto failed = result.report.failed_keys();
  for (const std::string& k : failed) std::cerr << "failed: " << k << '\n';
  return failed.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constant Gaussian curvature surfaces in hyperbolic 3-space from holomorphic quadratic differentials"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "job file (key = value)")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--lambda", o.lambdas, "spectral parameter RE,IM (repeatable)");
    sub->add_flag("--at-lambda0", o.at_lambda0, "also evaluate at lambda0");
    sub->add_option("--grid", o.grid, "nodes per side (odd, >= 9)");
    sub->add_option("--seed", o.seed, "built-in job when no config is given")
        ->check(CLI::IsMember({"umbilic", "cylinder"}));
    sub->add_option("--report", o.report, "report path");
  };

  const std::vector<std::pair<std::string, cgc::Stage>> stages{
      {"solve", cgc::Stage::Solve},       {"frame", cgc::Stage::Frame},
      {"mesh", cgc::Stage::Mesh},         {"family", cgc::Stage::Family},
      {"gaussmap", cgc::Stage::GaussMap}, {"converse", cgc::Stage::Converse}};
  std::vector<std::pair<CLI::App*, cgc::Stage>> subs;
  for (const auto& [name, stage] : stages) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the pipeline through the ") + name + " stage");
    add_common(sub);
    subs.emplace_back(sub, stage);
  }
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite on built-in fixtures");
  verify->add_option("--report", o.report, "report path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_verify(o);
    for (const auto& [sub, stage] : subs)
      if (sub->parsed()) return run_stage(o, stage);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

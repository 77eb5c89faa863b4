#pragma once

#include <string>
#include <vector>

#include "cgc/config.hpp"
#include "cgc/report.hpp"

namespace cgc {

// solve:    u field
// frame:    + extended frames at each lambda (and lambda0 when requested)
// mesh:     + surfaces, fundamental forms, meshes for unit-modulus lambdas
// family:   u field + associated family of `family` members
// gaussmap: u field + frame at lambda0 + Lagrangian Gauss map
// converse: harmonic seed -> rescaled data -> surface at lambda1
enum class Stage { Solve, Frame, Mesh, Family, GaussMap, Converse };

const char* to_string(Stage stage);

struct PipelineResult {
  VerifyReport report;
  std::vector<std::string> written;
};

// Never throws on stage failures: the failing stage is recorded in the report
// (with module and node) and later stages are skipped.
PipelineResult run_pipeline(const JobConfig& cfg, Stage stage);

}  // namespace cgc

#pragma once

#include <string>
#include <vector>

#include "cgc/report.hpp"

namespace cgc {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
};

struct AcceptanceResult {
  VerifyReport report;
  std::vector<CriterionResult> criteria;
};

// Runs every acceptance criterion on built-in fixtures. The determinism
// criterion repeats the whole suite and compares the rendered reports.
AcceptanceResult run_acceptance();

// One "criterion N: PASS|FAIL name" line per criterion.
std::string summary_lines(const AcceptanceResult& result);

}  // namespace cgc

// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <iostream>

#include "cgc/verify.hpp"

int main() {
  const cgc::AcceptanceResult result = cgc::run_acceptance();
  std::cout << cgc::summary_lines(result);
  const auto failed = result.report.failed_keys();
  for (const auto& key : failed) std::cout << "  failed check: " << key << '\n';
  if (!failed.empty()) std::cout << '\n' << result.report.render();
  return failed.empty() ? 0 : 1;
}

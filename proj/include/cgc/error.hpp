#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace cgc {

enum class ErrorCode {
  NotOnHyperboloid,
  NotOnOrbit,
  OutOfDomain,
  DomainViolation,
  NonConvergence,
  ImmersionViolated,
  DegenerateDenominator,
  ZeroLambda,
  HyperboloidDrift,
  DegenerateMetric,
  NotInvariant,
  OutOfRange,
  OnUnitCircle,
  InvalidGrid,
  ParseError,
  ValidationError,
  IOError,
};

const char* to_string(ErrorCode code);

// Every failure carries the module that raised it and, where meaningful,
// the offending grid node.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& message,
        std::optional<std::pair<int, int>> node = std::nullopt);

  ErrorCode code() const { return code_; }
  const std::string& module() const { return module_; }
  const std::optional<std::pair<int, int>>& node() const { return node_; }

 private:
  ErrorCode code_;
  std::string module_;
  std::optional<std::pair<int, int>> node_;
};

}  // namespace cgc

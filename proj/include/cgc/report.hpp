#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgc/grid.hpp"

namespace cgc {

// Flat key-value verification report. Keys keep insertion order; floats are
// printed with 17 significant digits.
class VerifyReport {
 public:
  enum class Kind { Info, Value, Check, Skipped };
  enum class Compare { AtMost, AtLeast, Within };

  struct Entry {
    std::string key;
    Kind kind = Kind::Info;
    std::string text;
    double value = 0.0;
    Compare compare = Compare::AtMost;
    double lo = 0.0;
    double hi = 0.0;
    bool pass = true;
  };

  void info(const std::string& key, const std::string& text);
  void value(const std::string& key, double v);
  // key.max and key.rms of a field over nodes at least `ring` from the boundary.
  void stats(const std::string& key, const RealField& field, int ring = 1);
  bool at_most(const std::string& key, double v, double limit);
  bool at_least(const std::string& key, double v, double limit);
  bool within(const std::string& key, double v, double lo, double hi);
  void skipped(const std::string& key, const std::string& reason);
  // Records a failed check for a stage that threw.
  void failure(const std::string& key, const std::string& reason);

  const std::vector<Entry>& entries() const { return entries_; }
  bool all_pass() const;
  std::vector<std::string> failed_keys() const;
  // Full document including the summary block.
  std::string render() const;

 private:
  std::vector<Entry> entries_;
};

// Writes render() to `path`; IOError on failure.
void emit_report(const VerifyReport& report, const std::string& path);

}  // namespace cgc

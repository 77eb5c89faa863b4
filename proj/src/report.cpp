#include "cgc/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cgc/error.hpp"
#include "cgc/io.hpp"

namespace cgc {

void VerifyReport::info(const std::string& key, const std::string& text) {
  entries_.push_back({key, Kind::Info, text});
}

void VerifyReport::value(const std::string& key, double v) {
  Entry e{key, Kind::Value, {}};
  e.value = v;
  entries_.push_back(e);
}

void VerifyReport::stats(const std::string& key, const RealField& field, int ring) {
  const FieldStats s = interior_stats(field, ring);
  value(key + ".max", s.max);
  value(key + ".rms", s.rms);
}

bool VerifyReport::at_most(const std::string& key, double v, double limit) {
  Entry e{key, Kind::Check, {}};
  e.value = v;
  e.compare = Compare::AtMost;
  e.hi = limit;
  e.pass = v <= limit;  // NaN fails
  entries_.push_back(e);
  return e.pass;
}

bool VerifyReport::at_least(const std::string& key, double v, double limit) {
  Entry e{key, Kind::Check, {}};
  e.value = v;
  e.compare = Compare::AtLeast;
  e.lo = limit;
  e.pass = v >= limit;
  entries_.push_back(e);
  return e.pass;
}

bool VerifyReport::within(const std::string& key, double v, double lo, double hi) {
  Entry e{key, Kind::Check, {}};
  e.value = v;
  e.compare = Compare::Within;
  e.lo = lo;
  e.hi = hi;
  e.pass = v >= lo && v <= hi;
  entries_.push_back(e);
  return e.pass;
}

void VerifyReport::skipped(const std::string& key, const std::string& reason) {
  entries_.push_back({key, Kind::Skipped, reason});
}

void VerifyReport::failure(const std::string& key, const std::string& reason) {
  Entry e{key, Kind::Check, reason};
  e.value = std::nan("");
  e.pass = false;
  entries_.push_back(e);
}

bool VerifyReport::all_pass() const {
  for (const Entry& e : entries_)
    if (!e.pass) return false;
  return true;
}

std::vector<std::string> VerifyReport::failed_keys() const {
  std::vector<std::string> out;
  for (const Entry& e : entries_)
    if (!e.pass) out.push_back(e.key);
  return out;
}

std::string VerifyReport::render() const {
  std::ostringstream os;
  for (const Entry& e : entries_) {
    switch (e.kind) {
      case Kind::Info:
        os << e.key << " = " << e.text << '\n';
        break;
      case Kind::Value:
        os << e.key << " = " << format_double(e.value) << '\n';
        break;
      case Kind::Skipped:
        os << e.key << " = skipped (" << e.text << ")\n";
        break;
      case Kind::Check:
        if (!e.text.empty()) {
          os << e.key << " = error (" << e.text << ")\n";
        } else {
          os << e.key << " = " << format_double(e.value) << '\n';
          os << e.key << ".limit = ";
          if (e.compare == Compare::AtMost) os << "<= " << format_double(e.hi);
          else if (e.compare == Compare::AtLeast) os << ">= " << format_double(e.lo);
          else os << "[" << format_double(e.lo) << ", " << format_double(e.hi) << "]";
          os << '\n';
        }
        os << e.key << ".status = " << (e.pass ? "pass" : "fail") << '\n';
        break;
    }
  }
  const auto failed = failed_keys();
  os << "summary.failed = " << failed.size() << '\n';
  os << "summary.failed_keys =";
  for (std::size_t k = 0; k < failed.size(); ++k) os << (k ? ", " : " ") << failed[k];
  os << '\n';
  os << "summary.status = " << (failed.empty() ? "pass" : "fail") << '\n';
  return os.str();
}

void emit_report(const VerifyReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IOError, "cli_io", "cannot open " + path + " for writing");
  out << report.render();
  out.flush();
  if (!out) throw Error(ErrorCode::IOError, "cli_io", "write failed: " + path);
}

}  // namespace cgc

#include "cgc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "cgc/error.hpp"

namespace cgc {

namespace {

using json = nlohmann::json;

[[noreturn]] void invalid(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::ValidationError, "cli_io", key + ": " + what);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double as_number(const std::string& key, const json& v) {
  if (!v.is_number()) invalid(key, "expected a number");
  return v.get<double>();
}

int as_int(const std::string& key, const json& v) {
  if (!v.is_number_integer()) invalid(key, "expected an integer");
  return v.get<int>();
}

Complex as_complex(const std::string& key, const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    invalid(key, "expected [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<Complex> as_complex_list(const std::string& key, const json& v) {
  if (!v.is_array()) invalid(key, "expected a list of [re, im]");
  std::vector<Complex> out;
  for (const json& e : v) out.push_back(as_complex(key, e));
  return out;
}

std::string as_word(const std::string& key, const json& v) {
  if (!v.is_string()) invalid(key, "expected a word");
  return v.get<std::string>();
}

}  // namespace

Grid JobConfig::grid() const {
  if (rect) return Grid::rectangle((*rect)[0], (*rect)[1], (*rect)[2], (*rect)[3], N, N);
  return Grid::inscribed(radius.value_or(0.8), N);
}

QDiff JobConfig::q() const { return QDiff::polynomial(q_coefficients, domain); }

void validate_config(const JobConfig& cfg) {
  if (!(cfg.K > -1.0 && cfg.K != 0.0) || !std::isfinite(cfg.K))
    invalid("K", "must lie in (-1,0) or (0,inf)");
  if (cfg.N % 2 == 0) throw Error(ErrorCode::ValidationError, "cli_io", "N must be odd");
  if (cfg.N < 9) invalid("N", "must be >= 9");
  if (cfg.q_coefficients.empty()) invalid("Q", "needs at least one coefficient");
  if (cfg.radius && !(*cfg.radius > 0.0)) invalid("radius", "must be positive");
  if (cfg.rect && !((*cfg.rect)[0] < (*cfg.rect)[1] && (*cfg.rect)[2] < (*cfg.rect)[3]))
    invalid("rect", "needs xmin < xmax and ymin < ymax");
  std::optional<Grid> grid;
  try {
    grid = cfg.grid();
  } catch (const Error& e) {
    invalid(cfg.rect ? "rect" : "N", e.what());
  }
  if (cfg.domain == QDomain::UnitDisk && grid->max_modulus() >= 1.0)
    invalid(cfg.rect ? "rect" : "radius", "grid must lie strictly inside the unit disk");
  if (cfg.bc == BoundaryMode::UmbilicExact) {
    if (!(cfg.K < 0.0)) invalid("bc", "umbilic-exact needs K < 0");
    if (cfg.q().kind() != QKind::Zero) invalid("bc", "umbilic-exact needs Q = 0");
  }
  if (cfg.bc == BoundaryMode::File && cfg.bc_file.empty()) invalid("bc_file", "required when bc = file");
  for (const Complex l : cfg.lambdas)
    if (l == Complex(0.0)) invalid("lambdas", "spectral parameter 0 is not allowed");
  if (cfg.family < 1) invalid("family", "must be >= 1");
  if (!(cfg.gauss_tolerance > 0.0)) invalid("tol.gauss", "must be positive");
  if (cfg.max_iterations < 1) invalid("tol.max_iterations", "must be >= 1");
  if (!(cfg.fd_tolerance > 0.0)) invalid("tol.fd", "must be positive");
  if (cfg.mode == JobMode::Converse) {
    if (!(std::abs(cfg.lambda1) > 1.0 + 1e-12)) invalid("lambda1", "converse mode needs |lambda1| > 1");
    if (cfg.target == MapTarget::Generic) invalid("target", "must be H2 or S2");
  }
}

JobConfig parse_config(std::string_view text) {
  JobConfig cfg;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ParseError, "cli_io", "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value_text = trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value_text.empty())
      throw Error(ErrorCode::ParseError, "cli_io", "line " + std::to_string(line_no) + ": empty key or value");
    const std::string canonical = key == "r" ? "radius" : key;
    if (!seen.insert(canonical).second)
      throw Error(ErrorCode::ParseError, "cli_io", "line " + std::to_string(line_no) + ": duplicate key " + key);

    json v = json::parse(value_text, nullptr, false);
    if (v.is_discarded()) {
      const bool word = value_text.find_first_of("[]{},\"") == std::string::npos &&
                        value_text.find_first_of(" \t") == std::string::npos;
      if (!word)
        throw Error(ErrorCode::ParseError, "cli_io",
                    "line " + std::to_string(line_no) + ": cannot parse value of " + key);
      v = value_text;
    }

    if (canonical == "K") {
      cfg.K = as_number(key, v);
    } else if (canonical == "Q") {
      cfg.q_coefficients = as_complex_list(key, v);
    } else if (canonical == "N") {
      cfg.N = as_int(key, v);
    } else if (canonical == "radius") {
      cfg.radius = as_number(key, v);
    } else if (canonical == "rect") {
      if (!v.is_array() || v.size() != 4) invalid(key, "expected [xmin, xmax, ymin, ymax]");
      std::array<double, 4> r{};
      for (int k = 0; k < 4; ++k) r[k] = as_number(key, v[k]);
      cfg.rect = r;
    } else if (canonical == "domain") {
      const std::string w = as_word(key, v);
      if (w == "disk") cfg.domain = QDomain::UnitDisk;
      else if (w == "plane") cfg.domain = QDomain::Plane;
      else invalid(key, "expected disk or plane");
    } else if (canonical == "lambdas") {
      cfg.lambdas = as_complex_list(key, v);
    } else if (canonical == "at_lambda0") {
      if (!v.is_boolean()) invalid(key, "expected true or false");
      cfg.at_lambda0 = v.get<bool>();
    } else if (canonical == "theta") {
      cfg.theta = as_number(key, v);
    } else if (canonical == "family") {
      cfg.family = as_int(key, v);
    } else if (canonical == "bc") {
      const std::string w = as_word(key, v);
      if (w == "heuristic") cfg.bc = BoundaryMode::Heuristic;
      else if (w == "umbilic-exact") cfg.bc = BoundaryMode::UmbilicExact;
      else if (w == "file") cfg.bc = BoundaryMode::File;
      else invalid(key, "expected heuristic, umbilic-exact or file");
    } else if (canonical == "bc_file") {
      cfg.bc_file = as_word(key, v);
    } else if (canonical == "out") {
      cfg.out = as_word(key, v);
    } else if (canonical == "tol.gauss") {
      cfg.gauss_tolerance = as_number(key, v);
    } else if (canonical == "tol.max_iterations") {
      cfg.max_iterations = as_int(key, v);
    } else if (canonical == "tol.fd") {
      cfg.fd_tolerance = as_number(key, v);
    } else if (canonical == "mode") {
      const std::string w = as_word(key, v);
      if (w == "forward") cfg.mode = JobMode::Forward;
      else if (w == "converse") cfg.mode = JobMode::Converse;
      else invalid(key, "expected forward or converse");
    } else if (canonical == "lambda1") {
      cfg.lambda1 = as_complex(key, v);
    } else if (canonical == "target") {
      const std::string w = as_word(key, v);
      if (w == "H2") cfg.target = MapTarget::H2;
      else if (w == "S2") cfg.target = MapTarget::S2;
      else invalid(key, "expected H2 or S2");
    } else {
      invalid(key, "unknown key");
    }
  }
  validate_config(cfg);
  return cfg;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IOError, "cli_io", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace cgc

#include "hsns/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "hsns/error.hpp"

namespace hsns {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
  std::string t = trim(text);
  double factor = 1.0;
  // lengths may be written as multiples of pi, e.g. 16pi
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    t = trim(t.substr(0, t.size() - 2));
    if (t.empty()) {
      out = factor;
      return true;
    }
  }
  std::istringstream is(t);
  double v;
  is >> v;
  if (!is || !is.eof()) return false;
  out = v * factor;
  return true;
}

}  // namespace

KeyValues KeyValues::parse(const std::string& text, const std::string& origin) {
  KeyValues kv;
  kv.origin_ = origin;
  std::istringstream is(text);
  std::string line;
  int number = 0;
  while (std::getline(is, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    std::ostringstream where;
    where << origin << ":" << number;
    if (eq == std::string::npos) fail(ErrorKind::Usage, where.str() + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ErrorKind::Usage, where.str() + ": empty key");
    if (kv.entries_.count(key)) fail(ErrorKind::Usage, where.str() + ": duplicate key '" + key + "'");
    kv.entries_[key] = {value, number};
  }
  return kv;
}

KeyValues KeyValues::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Usage, "config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

std::vector<std::string> KeyValues::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

const std::string& KeyValues::raw(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) fail(ErrorKind::Usage, origin_ + ": missing key '" + key + "'");
  return it->second.value;
}

void KeyValues::bad_value(const std::string& key, const std::string& expected) const {
  const auto& e = entries_.at(key);
  std::ostringstream os;
  os << origin_ << ":" << e.line << ": key '" << key << "' expects " << expected << ", got '" << e.value << "'";
  fail(ErrorKind::Usage, os.str());
}

std::string KeyValues::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? raw(key) : fallback;
}

double KeyValues::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  double v;
  if (!parse_double(raw(key), v) || !std::isfinite(v)) bad_value(key, "a finite number");
  return v;
}

double KeyValues::get_exponent(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  const std::string& t = raw(key);
  if (t == "inf" || t == "infinity") return std::numeric_limits<double>::infinity();
  double v;
  if (!parse_double(t, v) || !(v >= 1.0)) bad_value(key, "an exponent in [1, inf]");
  return v;
}

int KeyValues::get_int(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  std::istringstream is(raw(key));
  long long v;
  is >> v;
  if (!is || !is.eof() || v < INT32_MIN || v > INT32_MAX) bad_value(key, "an integer");
  return static_cast<int>(v);
}

std::uint64_t KeyValues::get_u64(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string& t = raw(key);
  if (t.empty() || t[0] == '-') bad_value(key, "an unsigned integer");
  std::istringstream is(t);
  std::uint64_t v;
  is >> v;
  if (!is || !is.eof()) bad_value(key, "an unsigned integer");
  return v;
}

bool KeyValues::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string& t = raw(key);
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  bad_value(key, "a boolean");
}

std::vector<int> KeyValues::get_ints(const std::string& key, const std::vector<int>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<int> out;
  std::istringstream is(raw(key));
  std::string item;
  while (std::getline(is, item, ',')) {
    std::istringstream it(trim(item));
    int v;
    it >> v;
    if (!it || !it.eof()) bad_value(key, "a comma-separated integer list");
    out.push_back(v);
  }
  if (out.empty()) bad_value(key, "a comma-separated integer list");
  return out;
}

std::vector<std::string> known_config_keys() {
  return {"n", "N", "L", "M", "X_max", "p", "q", "r", "tol", "max_iter", "enforce_smallness", "preset",
          "amplitude", "mode", "width", "perturbation", "perturbation_mode", "boundary_file", "force_file",
          "field_file", "calibration_file", "calibration_trials", "theta", "trials", "out", "format", "seed"};
}

RunConfig run_config_from(const KeyValues& kv) {
  const auto known = known_config_keys();
  for (const auto& key : kv.keys()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      fail(ErrorKind::Usage, "config: unknown key '" + key + "'");
    }
  }
  RunConfig c;
  c.n = kv.get_int("n", 3);
  if (c.n != 3 && c.n != 4) fail(ErrorKind::Usage, "config: key 'n' must be 3 or 4");
  const bool four = c.n == 4;
  c.points = kv.get_int("N", four ? 32 : 64);
  c.period = kv.get_double("L", 16.0 * std::numbers::pi);
  c.slabs = kv.get_int("M", four ? 32 : 64);
  c.height = kv.get_double("X_max", 8.0);
  c.p = kv.get_exponent("p", 2.0);
  c.q = kv.get_exponent("q", four ? std::numeric_limits<double>::infinity() : 2.0);
  c.r = kv.get_exponent("r", 2.0);
  c.tol = kv.get_double("tol", 1e-10);
  c.max_iter = kv.get_int("max_iter", 100);
  c.enforce_smallness = kv.get_bool("enforce_smallness", false);
  c.preset = kv.get_string("preset", "zero");
  c.amplitude = kv.get_double("amplitude", 0.5);
  c.mode = kv.get_ints("mode", {});
  c.width = kv.get_double("width", 2.0);
  c.perturbation = kv.get_double("perturbation", 0.0);
  c.perturbation_mode = kv.get_int("perturbation_mode", 8);
  c.boundary_file = kv.get_string("boundary_file", "");
  c.force_file = kv.get_string("force_file", "");
  c.field_file = kv.get_string("field_file", "");
  c.calibration_file = kv.get_string("calibration_file", "");
  c.calibration_trials = kv.get_int("calibration_trials", 20);
  c.theta = kv.get_double("theta", 0.2);
  c.trials = kv.get_int("trials", 20);
  c.out_dir = kv.get_string("out", ".");
  c.format = kv.get_string("format", "csv");
  c.seed = kv.get_u64("seed", 1);

  if (c.format != "csv" && c.format != "json-lines") fail(ErrorKind::Usage, "config: key 'format' must be csv or json-lines");
  if (c.trials < 1 || c.calibration_trials < 1) fail(ErrorKind::Usage, "config: trial counts must be >= 1");
  if (!(c.tol > 0.0)) fail(ErrorKind::Usage, "config: key 'tol' must be positive");
  if (c.max_iter < 1) fail(ErrorKind::Usage, "config: key 'max_iter' must be >= 1");
  if (!(c.width > 0.0)) fail(ErrorKind::Usage, "config: key 'width' must be positive");
  if (!(c.theta > 0.0)) fail(ErrorKind::Usage, "config: key 'theta' must be positive");
  if (!c.mode.empty() && static_cast<int>(c.mode.size()) != c.n - 1) {
    fail(ErrorKind::Usage, "config: key 'mode' must list n-1 integers");
  }
  static_cast<void>(c.grid());
  c.solver().validate();
  return c;
}

Grid RunConfig::grid() const {
  return Grid(n - 1, points, period, slabs, height);
}

SolverConfig RunConfig::solver() const {
  SolverConfig s{grid()};
  s.p = p;
  s.q = q;
  s.r = r;
  s.tol = tol;
  s.max_iter = max_iter;
  s.enforce_smallness = enforce_smallness;
  return s;
}

}  // namespace hsns

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hsns/fixed_point.hpp"

namespace hsns {

/// Flat key=value text. '#' starts a comment; blank lines are ignored.
class KeyValues {
 public:
  static KeyValues parse(const std::string& text, const std::string& origin = "config");
  static KeyValues load(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::vector<std::string> keys() const;
  const std::string& raw(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  /// Accepts "inf" as well as numbers.
  double get_exponent(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<int> get_ints(const std::string& key, const std::vector<int>& fallback) const;

 private:
  [[noreturn]] void bad_value(const std::string& key, const std::string& expected) const;

  struct Entry {
    std::string value;
    int line;
  };
  std::string origin_;
  std::map<std::string, Entry> entries_;
};

/// Everything a CLI run needs. Defaults follow n: N = M = 64 and q = 2
/// for n = 3, N = M = 32 and q = inf for n = 4; L = 16π, X_max = 8.
struct RunConfig {
  int n = 3;
  int points = 64;
  double period = 0.0;
  int slabs = 64;
  double height = 8.0;
  double p = 2.0, q = 2.0, r = 2.0;
  double tol = 1e-10;
  int max_iter = 100;
  bool enforce_smallness = false;

  std::string preset = "zero";
  double amplitude = 0.5;
  std::vector<int> mode;
  double width = 2.0;
  double perturbation = 0.0;
  int perturbation_mode = 8;

  std::string boundary_file;
  std::string force_file;
  std::string field_file;
  std::string calibration_file;
  int calibration_trials = 20;
  double theta = 0.2;
  int trials = 20;

  std::string out_dir = ".";
  std::string format = "csv";
  std::uint64_t seed = 1;

  Grid grid() const;
  SolverConfig solver() const;
};

/// Validates every value against module preconditions.
RunConfig run_config_from(const KeyValues& kv);
std::vector<std::string> known_config_keys();

}  // namespace hsns

#pragma once

#include <cstdint>
#include <string>

#include "hsns/fixed_point.hpp"

namespace hsns {

/// Empirical smallness constants. c0 is twice the largest boundary, force
/// and bilinear operator ratio over a seeded battery (at least 1);
/// delta0 = 1/(12 c0^2), eps0 = 1/(4 c0). The limit-system constants are
/// built the same way and capped by delta0, eps0.
struct Calibration {
  int n = 0;
  double p = 0.0, q = 0.0, r = 0.0;
  int points = 0, slabs = 0;
  double period = 0.0, height = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;

  double boundary_ratio = 0.0;
  double force_ratio = 0.0;
  double bilinear_ratio = 0.0;
  double c0 = 1.0, delta0 = 0.0, eps0 = 0.0;

  bool has_limit = false;
  double limit_linear_ratio = 0.0;
  double limit_bilinear_ratio = 0.0;
  double c1 = 1.0, delta1 = 0.0, eps1 = 0.0;

  /// Throws ErrorKind::Data when the calibration was made for another setup.
  void check_matches(const SolverConfig& cfg) const;
};

Calibration calibrate(const SolverConfig& cfg, int trials, std::uint64_t seed, bool limit_system);

std::string to_key_values(const Calibration& cal);
Calibration calibration_from_key_values(const std::string& text);
void save_calibration(const Calibration& cal, const std::string& path);
Calibration load_calibration(const std::string& path);

}  // namespace hsns

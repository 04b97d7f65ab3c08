#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hsns/fixed_point.hpp"

namespace hsns {

struct Calibration;

struct PresetParams {
  double amplitude = 0.5;   ///< fraction of δ̂ with a calibration, raw scale without
  std::vector<int> mode;    ///< wavenumber for single-mode, n-1 entries
  double width = 2.0;       ///< Gaussian width for bump shapes
  double perturbation = 0.0;   ///< relative size of the boundary bump added to ū
  int perturbation_mode = 8;   ///< wavenumber of that bump along x_1
};

struct ProblemData {
  std::string name;
  TangentialField a;
  HalfSpaceField F;
  std::optional<TangentialField> fbar;  ///< x_n-independent force for tail presets
  std::optional<TangentialField> ubar;  ///< limit profile for profile-consistent
};

std::vector<std::string> preset_names();

/// Presets: zero, single-mode, gaussian-bump, tail-constant-force,
/// profile-consistent. With a calibration the data norm is scaled to
/// amplitude times δ̂₀ (δ̂₁ for the tail presets).
ProblemData make_preset(const std::string& name, const SolverConfig& cfg, const PresetParams& params,
                        const Calibration* calibration = nullptr);

/// Periodic Gaussian exp(-|x'-c|^2/w^2) centred at c = shift + L/2 per axis.
TangentialField periodic_gaussian(const Grid& grid, double width, double shift);

}  // namespace hsns

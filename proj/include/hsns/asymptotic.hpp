#pragma once

#include <vector>

#include "hsns/fixed_point.hpp"

namespace hsns {

/// ū' = (-Δ')^{-1} ℙ' div' G', ū_n = (-Δ')^{-1} div' G_n for an x_n-independent
/// n*n tensor G, with (div' G)_k = Σ_l ∂_l G_{k,l} over tangential l.
TangentialField limit_operator(const TangentialField& G);

/// (u ⊗ v)_{k,l} = u_k v_l on the torus, dealiased.
TangentialField profile_tensor(const TangentialField& u, const TangentialField& v);

struct LimitReport {
  std::vector<double> diffs;
  std::vector<double> ratios;
  bool converged = false;
  int iterations = 0;
  double norm = 0.0;              ///< ‖ū‖_{Ḃ^{d/p-1}}
  double pde_residual = 0.0;      ///< absolute, in Ḃ^{d/p-3}
  double divergence_residual = 0.0;
};

struct LimitSolution {
  TangentialField ubar;
  LimitReport report;
};

/// Picard iteration ū ← limit_operator(F̄ - ū ⊗ ū) from ū = limit_operator(F̄).
/// Requires n = 4.
LimitSolution limit_system_solve(const TangentialField& Fbar, const SolverConfig& cfg,
                                 const Calibration* calibration = nullptr);

/// Spectral residual of the limit system, absolute, in Ḃ^{d/p-3}.
double limit_pde_residual(const TangentialField& ubar, const TangentialField& Fbar, const SolverConfig& cfg);

/// ‖u - ū‖ in L̃^∞(R, ∞; Ḃ^{d/p-1}) over the slabs reaching above R and the tail.
double profile_distance(const HalfSpaceField& u, const TangentialField& ubar, double R, const BesovIndex& idx);

struct ProfileDecayReport {
  std::vector<double> heights;
  std::vector<double> distances;
  bool non_increasing = false;
  double decay_ratio = 0.0;  ///< D(7X/8) / D(0), 0 when D(0) = 0
  double theta = 0.2;
  bool decay_ok = false;
  LimitReport limit;
  IterationReport picard;
};

ProfileDecayReport profile_decay_verify(const TangentialField& a, const TangentialField& Fbar, const SolverConfig& cfg,
                               const Calibration* calibration = nullptr, double theta = 0.2);

}  // namespace hsns

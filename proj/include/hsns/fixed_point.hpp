#pragma once

#include <optional>
#include <vector>

#include "hsns/besov.hpp"
#include "hsns/halfspace_field.hpp"

namespace hsns {

struct Calibration;

struct SolverConfig {
  Grid grid;
  double p = 2.0;
  double q = 2.0;
  double r = 2.0;
  double tol = 1e-10;
  int max_iter = 100;
  bool enforce_smallness = false;
  /// Run the detailed linear solve on every iterate and record its
  /// divergence and trace residuals.
  bool audit_iterates = false;

  int n() const { return grid.dim() + 1; }
  double qs() const { return q_star(q); }
  /// L̃^{q*}(Ḃ^{d/p+1/q*-1}): the contraction norm.
  CLIndex x_vertical() const { return {qs()}; }
  BesovIndex x_index() const { return {grid.dim() / p + 1.0 / qs() - 1.0, p, r}; }
  /// L̃^∞(Ḃ^{d/p-1}).
  BesovIndex linf_index() const { return {grid.dim() / p - 1.0, p, r}; }
  BesovIndex boundary_index() const { return {grid.dim() / p - 1.0, p, r}; }
  BesovIndex force_index() const { return {grid.dim() / p + 1.0 / q - 2.0, p, r}; }
  void validate() const;
};

struct IterationRecord {
  int k = 0;
  double norm = 0.0;   ///< ‖u^(k)‖ in the contraction norm
  double diff = 0.0;   ///< ‖u^(k) - u^(k-1)‖
  double ratio = 0.0;  ///< diff_k / diff_{k-1}, 0 for k = 1
  double divergence_residual = 0.0;
  double trace_residual = 0.0;
  double seconds = 0.0;
};

struct IterationReport {
  std::vector<IterationRecord> records;
  bool converged = false;
  int iterations = 0;
  double data_norm = 0.0;
  double fixed_point_residual = 0.0;
  double x_norm = 0.0;
  double linf_norm = 0.0;
  double divergence_residual = 0.0;
  double trace_residual = 0.0;
};

/// (u ⊗ v)_{k,l} = u_k v_l with dealiased products, tail times tail.
HalfSpaceField tensor_product(const HalfSpaceField& u, const HalfSpaceField& v);

/// S[v] = U^boundary[a] + U^force[F - v ⊗ v].
HalfSpaceField nonlinear_map(const HalfSpaceField& v, const TangentialField& a, const HalfSpaceField& F);

double solution_norm(const HalfSpaceField& u, const SolverConfig& cfg);
/// ‖a‖_{Ḃ^{d/p-1}} + ‖F‖_{L̃^q(Ḃ^{d/p+1/q-2})}.
double data_norm(const TangentialField& a, const HalfSpaceField& F, const SolverConfig& cfg);

struct PicardResult {
  HalfSpaceField u;
  IterationReport report;
};

/// u^(0) = S[v0] with v0 = initial (zero by default), u^(k) = S[u^(k-1)].
/// Throws ErrorKind::NumericGate on non-convergence, infinite norms or a
/// failed smallness gate.
PicardResult picard_solve(const TangentialField& a, const HalfSpaceField& F, const SolverConfig& cfg,
                          const Calibration* calibration = nullptr, const HalfSpaceField* initial = nullptr,
                          double gate_delta = 0.0);

struct ResidualReport {
  double fixed_point = 0.0;  ///< ‖u - S[u]‖ in the contraction norm
  double divergence = 0.0;
  double trace = 0.0;
  double x_norm = 0.0;
  double linf_norm = 0.0;
};
ResidualReport residual_report(const HalfSpaceField& u, const TangentialField& a, const HalfSpaceField& F,
                               const SolverConfig& cfg);

}  // namespace hsns

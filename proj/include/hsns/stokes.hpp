#pragma once

#include <span>
#include <vector>

#include "hsns/besov.hpp"
#include "hsns/halfspace_field.hpp"

namespace hsns {

/// Component index of F_{k,l} (0-based, normal index n-1) in an n*n field.
inline int tensor_index(int n, int k, int l) { return k * n + l; }

/// Values, and optionally x_n-derivatives, of an n-component field at a
/// list of heights.
struct HeightSamples {
  std::vector<double> heights;
  std::vector<TangentialField> value;
  std::vector<TangentialField> derivative;
};

enum class BoundaryVariant {
  Derived,  ///< tangential term -i x_n ξ' a_n
  Riesz,    ///< tangential term (iξ'/|ξ'|) a_n, not divergence-free
};

/// Divergence-free extension of boundary data a (n components).
HeightSamples boundary_samples(const TangentialField& a, std::span<const double> heights, bool derivatives,
                               BoundaryVariant variant = BoundaryVariant::Derived);
/// Slab-centre values; the field vanishes as x_n → ∞ so no tail is stored.
HalfSpaceField boundary_operator(const TangentialField& a);

/// Whole-space part u^w[F] for F with n*n components.
HeightSamples whole_space_samples(const HalfSpaceField& F, std::span<const double> heights, bool derivatives);
/// Limit of u^w[F] as x_n → ∞ (zero unless F has a tail).
TangentialField whole_space_at_infinity(const HalfSpaceField& F);
/// Slab-centre values plus the limit as tail when F has a tail.
HalfSpaceField whole_space_solution(const HalfSpaceField& F);
/// u^w[F](·, 0) from the boundary integrals of L^(1,+), L^(3,+), L^(4,-).
TangentialField trace_whole_space(const HalfSpaceField& F);

HalfSpaceField force_operator(const HalfSpaceField& F);
HalfSpaceField linear_solve(const TangentialField& a, const HalfSpaceField& F);

/// Slab centres with x_n = 0 prepended.
std::vector<double> sample_heights(const Grid& grid);

struct LinearSolution {
  HalfSpaceField u;
  HeightSamples samples;        ///< u at sample_heights(grid), with derivatives
  HeightSamples whole_space;    ///< u^w at the same heights, with derivatives
  TangentialField whole_space_trace;
};
LinearSolution linear_solve_detailed(const TangentialField& a, const HalfSpaceField& F);

/// max |∂_n û_n + iξ'·û'| over heights and modes, divided by
/// max |ξ'| |û| (1 when the field vanishes).
double divergence_residual(const HeightSamples& s);

struct EvolutionReport {
  double normal_residual = 0.0;      ///< (κ+∂)ŵ_n
  double tangential_residual = 0.0;  ///< (κ+∂)ŵ'
  double scale = 0.0;
  double max_residual() const { return std::max(normal_residual, tangential_residual); }
};
/// Residuals for v = u - u^w, relative to max κ² |v̂|.
EvolutionReport evolution_relation_check(const LinearSolution& sol);

struct LinearDiagnostics {
  double trace_residual = 0.0;
  double divergence_residual = 0.0;
  double whole_space_divergence = 0.0;
  double evolution_residual = 0.0;
};
LinearDiagnostics linear_diagnostics(const TangentialField& a, const LinearSolution& sol, double p, double r);

/// LHS/RHS of the maximal-regularity estimate; 0 when the data vanish.
double max_reg_ratio(const TangentialField& a, const HalfSpaceField& F, double q, double q1, double p, double r);
RatioStats max_reg_check(const Grid& grid, int trials, double q, double q1, double p, double r, std::uint64_t seed);

}  // namespace hsns

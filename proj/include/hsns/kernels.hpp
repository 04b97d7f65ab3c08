#pragma once

#include <span>
#include <vector>

#include "hsns/halfspace_field.hpp"

namespace hsns {

enum class Sign { Plus = 0, Minus = 1 };

/// K^(j)(κ, z) for j = 1..5; sgn(0) = 0 in K^(2).
double kernel_value(int j, double kappa, double z);

/// Multiplier e^{-x |ξ'|}.
TangentialField poisson_apply(double x, const TangentialField& f);

/// Closed-form integrals of the kernels against piecewise-constant sources.
/// For one κ, weight(j, ±, h, s) is ∫ over source block s of
/// K^(j)(κ, x_h - y) ± K^(j)(κ, x_h + y) dy. Sources are the slabs followed
/// by the tail (y > X_max) when requested.
class KernelWeights {
 public:
  KernelWeights(const Grid& grid, std::vector<double> heights, bool tail);

  void compute(double kappa);

  int height_count() const { return static_cast<int>(heights_.size()); }
  int source_count() const { return sources_; }
  double height(int h) const { return heights_[h]; }
  const double* row(int j, Sign sign, int h) const {
    return w_.data() + ((static_cast<std::size_t>(j - 1) * 2 + static_cast<int>(sign)) * heights_.size() + h) * sources_;
  }
  /// Source block holding height h, or -1 if the field vanishes there.
  int source_at(int h) const { return source_at_[h]; }

 private:
  std::vector<double> heights_;
  std::vector<double> lower_, upper_;
  std::vector<int> source_at_;
  int sources_;
  std::vector<double> w_;
};

/// Coefficient of one mode of one component across the source blocks.
void gather_sources(const HalfSpaceField& G, int component, std::size_t mode, std::span<cplx> out);

/// L^{j,±}[G] at each height, applied componentwise.
std::vector<TangentialField> L_operator(int j, Sign sign, const HalfSpaceField& G, std::span<const double> heights);
TangentialField L_operator(int j, Sign sign, const HalfSpaceField& G, double x);
/// Limit of L^{j,±}[G](x) as x → ∞: the tail times ∫ K^(j) over the line.
TangentialField L_operator_at_infinity(int j, Sign sign, const HalfSpaceField& G);

/// Boundary values 2∫e^{-κy}G, 2∫(1+κy)e^{-κy}G and -2∫κy e^{-κy}G.
TangentialField trace_L1plus(const HalfSpaceField& G);
TangentialField trace_L3plus(const HalfSpaceField& G);
TangentialField trace_L4minus(const HalfSpaceField& G);

namespace detail {
/// ∫_{a/κ}^{(a+δ)/κ} e^{-κt} dt and ∫ κt e^{-κt} dt over the same range;
/// δ = ∞ gives the tail integrals.
void exp_moments(double kappa, double a, double delta, double& e0, double& e1);
}  // namespace detail

}  // namespace hsns

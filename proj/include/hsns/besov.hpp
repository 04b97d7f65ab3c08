#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hsns/halfspace_field.hpp"
#include "hsns/tangential_field.hpp"

namespace hsns {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Homogeneous Besov exponents (s, p, r); p and r may be kInfinity.
struct BesovIndex {
  double s;
  double p;
  double r;
};

/// Vertical exponent q and interval (a, b) with b possibly kInfinity.
struct CLIndex {
  double q;
  double a = 0.0;
  double b = kInfinity;
};

/// Values of φ̂_j at every mode of a grid, j over the dyadic range.
class BlockWeights {
 public:
  explicit BlockWeights(const Grid& grid);
  const DyadicRange& range() const { return range_; }
  std::span<const double> weights(int j) const;

 private:
  DyadicRange range_;
  std::size_t modes_;
  std::vector<double> w_;
};

/// ℓ^r norm of a finite sequence of nonnegative terms.
double lr_norm(std::span<const double> terms, double r);
/// L^p norm on the torus; vector fields use the pointwise Euclidean norm.
double lp_norm(const TangentialField& f, double p);
/// ‖Δ_j f‖_{L^p} for j = j_min..j_max.
std::vector<double> block_lp_norms(const TangentialField& f, double p);
std::vector<double> block_lp_norms(const TangentialField& f, double p, const BlockWeights& blocks);

double besov_norm(const TangentialField& f, const BesovIndex& idx);
/// Returns kInfinity when a nonzero tail meets q < ∞ on an unbounded interval.
double chemin_lerner_norm(const HalfSpaceField& u, const CLIndex& cl, const BesovIndex& idx);

struct BonyParts {
  TangentialField low_high;   ///< T_f g
  TangentialField resonant;   ///< R(f, g)
  TangentialField high_low;   ///< T_g f
};
BonyParts bony_decompose(const TangentialField& f, const TangentialField& g);

/// Slab-wise and tail-wise dealiased product of two scalar fields.
HalfSpaceField pointwise_product(const HalfSpaceField& f, const HalfSpaceField& g);

/// Exponent bookkeeping shared by the bilinear estimate and the solver.
double q_star(double q);
double holder_conjugate(double q);
/// Throws ErrorKind::Usage naming the violated constraint of
/// 1 <= p < q*'(n-1), q < ∞ for n = 3, q, r in [1, ∞].
void check_solver_exponents(int n, double p, double q, double r);
/// Which resonant-term regime (1, 2 or 3) the exponents fall in.
int bilinear_regime(double p, double q);

/// ‖fg‖_{L̃^{q*/2}(Ḃ^{d/p+2/q*-2})} / (‖f‖_X ‖g‖_X), X = L̃^{q*}(Ḃ^{d/p+1/q*-1}).
/// Returns 0 when either factor vanishes.
double bilinear_ratio(const HalfSpaceField& f, const HalfSpaceField& g, double p, double q, double r);

struct RatioStats {
  std::vector<double> ratios;
  int skipped = 0;
  double max = 0.0;
  double median = 0.0;
};
RatioStats summarize_ratios(std::vector<double> ratios);

RatioStats bilinear_estimate_check(const Grid& grid, int trials, double p, double q, double r, std::uint64_t seed);

/// f_λ on the companion grid with λ = 2^power: coefficients times λ^weight.
TangentialField dyadic_rescale(const TangentialField& f, int power, double weight);
HalfSpaceField dyadic_rescale(const HalfSpaceField& f, int power, double weight);

std::string format_exponent(double v);

}  // namespace hsns

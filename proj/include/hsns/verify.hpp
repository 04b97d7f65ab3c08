#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsns/run_config.hpp"

namespace hsns {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

/// value <= threshold (or >= when at_least) and finite.
CheckResult make_check(const std::string& name, double value, double threshold, bool at_least = false);
bool all_passed(const std::vector<CheckResult>& checks);

struct KernelSample {
  int j = 0;
  double kappa = 0.0;
  double z = 0.0;
  double quadrature = 0.0;
  double closed_form = 0.0;
  double rel_error = 0.0;
};
/// Seeded (κ, z) in [0.1, 10] x [-5, 5]; every identity at every sample.
std::vector<KernelSample> kernel_battery(int samples, std::uint64_t seed);

struct TraceIdentityReport {
  double l4_plus = 0.0;       ///< max |L^(4,+)(0)| / max |L^(1,+)(0)|
  double l5_minus = 0.0;      ///< max |L^(5,-)(0)| / max |L^(1,+)(0)|
  double l2_minus_sum = 0.0;  ///< max |L^(2,-)(0) + L^(1,+)(0)| / max |L^(1,+)(0)|
  double trace_consistency = 0.0;  ///< trace_L1plus against L_operator at 0
  double max() const;
};
TraceIdentityReport trace_identity_check(const Grid& grid, int fields, std::uint64_t seed);

struct SemigroupReport {
  double eigen_error = 0.0;        ///< single modes against e^{-xκ}
  double composition_error = 0.0;  ///< P(s)P(t) against P(s+t)
  double fitted_c = 0.0;           ///< largest c with C = 4 over all samples
  double fitted_C = 0.0;           ///< smallest C with c = 0.4
};
/// Envelope ‖Δ_j P(x) f‖_p <= C e^{-c 2^j x} ‖Δ_j f‖_p over every block,
/// p in {1, 2, ∞} and x in {0, h, ..., X_max}.
SemigroupReport semigroup_check(const Grid& grid, int fields, std::uint64_t seed);

struct BoundaryVariantReport {
  double derived = 0.0;        ///< max per-mode divergence, absolute
  double riesz_variant = 0.0;  ///< same with the Riesz tangential term
  double normal_size = 0.0; ///< max |â_n|
};
/// Unit single-mode boundary data with only a_n nonzero at |ξ'| = κ_target
/// (rounded to the nearest x_1 mode), sampled at x = 0 and the slab centres.
BoundaryVariantReport boundary_variant_check(const Grid& grid, double kappa_target = 1.0);

/// Full invariant suite on the configured grid, sized for interactive use.
std::vector<CheckResult> run_verify_suite(const RunConfig& cfg);

}  // namespace hsns

#include <gtest/gtest.h>

#include <cmath>

#include "hsns/calibration.hpp"
#include "hsns/error.hpp"
#include "hsns/fixed_point.hpp"
#include "hsns/presets.hpp"
#include "hsns/spectral_ops.hpp"
#include "hsns/stokes.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hsns;
using testing_support::rel;
using testing_support::small_grid;

namespace {

SolverConfig config(const Grid& g) {
  SolverConfig cfg{g};
  cfg.q = 2.0;
  return cfg;
}

ProblemData bump(const SolverConfig& cfg, double amplitude) {
  PresetParams params;
  params.amplitude = amplitude;
  return make_preset("gaussian-bump", cfg, params);
}

}  // namespace

TEST(Tensor, ZeroAndSymmetry) {
  const Grid g = small_grid(2, 16, 4);
  EXPECT_TRUE(tensor_product(HalfSpaceField(g, 3), HalfSpaceField(g, 3)).is_zero());
  Rng rng(1);
  const auto u = random_halfspace(g, 3, rng, 5, true);
  const auto uu = tensor_product(u, u);
  ASSERT_TRUE(uu.has_tail());
  for (int b = 0; b < uu.block_count(); ++b) {
    for (int k = 0; k < 3; ++k) {
      for (int l = 0; l < 3; ++l) {
        EXPECT_EQ(max_abs_diff(uu.block(b).slice(tensor_index(3, k, l), 1), uu.block(b).slice(tensor_index(3, l, k), 1)), 0.0);
      }
    }
  }
}

TEST(Tensor, MatchesDenseConvolution) {
  const Grid g = small_grid(2, 8, 2);
  Rng rng(2);
  const auto u = random_halfspace(g, 3, rng, 3, true);
  const auto v = random_halfspace(g, 3, rng, 3, true);
  const auto uv = tensor_product(u, v);
  for (int b = 0; b < uv.block_count(); ++b) {
    for (int k = 0; k < 3; ++k) {
      for (int l = 0; l < 3; ++l) {
        const auto ref = oracle::dense_product(u.block(b).slice(k, 1), v.block(b).slice(l, 1));
        EXPECT_LE(max_abs_diff(uv.block(b).slice(tensor_index(3, k, l), 1), ref), 1e-14);
      }
    }
  }
}

TEST(Tensor, SingleModeSpectrumOnSumAndDifference) {
  const Grid g = small_grid(2, 16, 1);
  HalfSpaceField u(g, 3);
  u.slab(0).set_slice(0, testing_support::single_mode(g, {2, 1}));
  u.slab(0).set_slice(1, testing_support::single_mode(g, {1, 0}));
  const auto uu = tensor_product(u, u).slab(0).slice(tensor_index(3, 0, 1), 1);
  for (std::size_t m = 0; m < g.modes(); ++m) {
    const auto k = g.multi_index(m);
    const bool allowed = (k == std::vector<int>{3, 1}) || (k == std::vector<int>{-3, -1}) ||
                         (k == std::vector<int>{1, 1}) || (k == std::vector<int>{-1, -1});
    EXPECT_NEAR(std::abs(uu(0, m)), allowed ? 0.25 : 0.0, 1e-15);
  }
}

TEST(NonlinearMap, ZeroAndLinear) {
  const Grid g = small_grid(2, 16, 8);
  EXPECT_TRUE(nonlinear_map(HalfSpaceField(g, 3), TangentialField(g, 3), HalfSpaceField(g, 9)).is_zero());
  Rng rng(3);
  const auto a = random_tangential(g, 3, rng, 5);
  const auto F = random_halfspace(g, 9, rng, 5);
  const auto lhs = nonlinear_map(HalfSpaceField(g, 3), a, F);
  EXPECT_EQ((lhs - linear_solve(a, F)).max_abs(), 0.0);
}

TEST(Picard, ZeroDataOneIteration) {
  const Grid g = small_grid(2, 16, 8);
  const auto res = picard_solve(TangentialField(g, 3), HalfSpaceField(g, 9), config(g));
  EXPECT_TRUE(res.u.is_zero());
  EXPECT_EQ(res.report.iterations, 1);
  EXPECT_TRUE(res.report.converged);
  const auto rr = residual_report(res.u, TangentialField(g, 3), HalfSpaceField(g, 9), config(g));
  EXPECT_EQ(rr.fixed_point, 0.0);
  EXPECT_EQ(rr.divergence, 0.0);
  EXPECT_EQ(rr.trace, 0.0);
}

TEST(Picard, CalibratedSmallDataContracts) {
  const Grid g = small_grid(2, 16, 16);
  SolverConfig cfg = config(g);
  cfg.audit_iterates = true;
  cfg.enforce_smallness = true;
  const Calibration cal = calibrate(cfg, 3, 7, false);
  EXPECT_GE(cal.c0, 1.0);
  EXPECT_DOUBLE_EQ(cal.delta0, 1.0 / (12 * cal.c0 * cal.c0));
  PresetParams params;
  params.amplitude = 0.5;
  const auto data = make_preset("gaussian-bump", cfg, params, &cal);
  EXPECT_LE(rel(data_norm(data.a, data.F, cfg), 0.5 * cal.delta0), 1e-12);
  const auto res = picard_solve(data.a, data.F, cfg, &cal);
  EXPECT_TRUE(res.report.converged);
  EXPECT_LE(res.report.iterations, 30);
  for (const auto& rec : res.report.records) {
    if (rec.k >= 2) {
      EXPECT_LE(rec.ratio, 0.5);
    }
    EXPECT_LE(rec.divergence_residual, 1e-9);
    EXPECT_LE(rec.trace_residual, 1e-9);
  }
  EXPECT_LE(res.report.fixed_point_residual, 1e-9);
  EXPECT_LE(res.report.divergence_residual, 1e-9);
  EXPECT_LE(res.report.trace_residual, 1e-9);
  EXPECT_LE(res.report.x_norm, cal.eps0);
  EXPECT_TRUE(std::isfinite(res.report.linf_norm));

  // a different in-ball starting point reaches the same fixed point
  const HalfSpaceField start = -1.0 * linear_solve(data.a, data.F);
  const auto other = picard_solve(data.a, data.F, cfg, &cal, &start);
  EXPECT_LE(solution_norm(other.u - res.u, cfg), 10 * cfg.tol);

  // a perturbed field is no longer a fixed point
  Rng rng(8);
  HalfSpaceField noisy = res.u;
  auto noise = random_halfspace(g, 3, rng, 6);
  noise *= 1e-3 * res.u.max_abs() / noise.max_abs();
  noisy += noise;
  EXPECT_GT(residual_report(noisy, data.a, data.F, cfg).fixed_point, cfg.tol);
}

TEST(Picard, ScalingEquivariance) {
  const Grid g = small_grid(2, 16, 16);
  const SolverConfig cfg = config(g);
  const auto data = bump(cfg, 0.02);
  const auto base = picard_solve(data.a, data.F, cfg);
  EXPECT_GT(base.report.iterations, 2);
  SolverConfig scaled_cfg = cfg;
  scaled_cfg.grid = g.dyadic_companion(1);
  const auto scaled = picard_solve(dyadic_rescale(data.a, 1, 1.0), dyadic_rescale(data.F, 1, 2.0), scaled_cfg);
  EXPECT_LE(rel(scaled.report.x_norm, base.report.x_norm), 1e-8);
  EXPECT_LE(rel(scaled.report.linf_norm, base.report.linf_norm), 1e-8);
  const auto expected = dyadic_rescale(base.u, 1, 1.0);
  EXPECT_LE(solution_norm(scaled.u - expected, scaled_cfg), 1e-8 * base.report.x_norm);
}

TEST(Picard, Failures) {
  const Grid g = small_grid(2, 16, 8);
  SolverConfig cfg = config(g);
  const TangentialField a = bump(cfg, 0.05).a;

  cfg.max_iter = 1;
  try {
    picard_solve(a, HalfSpaceField(g, 9), cfg);
    FAIL() << "expected non-convergence";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NumericGate);
    EXPECT_NE(std::string(e.what()).find("ratios=["), std::string::npos);
  }
  cfg.max_iter = 100;

  Rng rng(9);
  const auto F = random_halfspace(g, 9, rng, 4, true);
  try {
    picard_solve(TangentialField(g, 3), F, cfg);
    FAIL() << "expected an infinite norm";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NumericGate);
  }

  cfg.enforce_smallness = true;
  try {
    picard_solve(a, HalfSpaceField(g, 9), cfg);
    FAIL() << "expected a usage error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Usage);
  }
  Calibration cal;
  cal.delta0 = 1e-6;
  try {
    picard_solve(a, HalfSpaceField(g, 9), cfg, &cal);
    FAIL() << "expected the smallness gate";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NumericGate);
    EXPECT_NE(std::string(e.what()).find("delta0"), std::string::npos);
  }

  SolverConfig bad = config(g);
  bad.q = kInfinity;
  EXPECT_THROW(picard_solve(a, HalfSpaceField(g, 9), bad), Error);
}

TEST(Calibration, KeyValueRoundTrip) {
  const Grid g = small_grid(2, 16, 8);
  SolverConfig cfg = config(g);
  const Calibration cal = calibrate(cfg, 2, 3, false);
  const Calibration back = calibration_from_key_values(to_key_values(cal));
  EXPECT_EQ(back.c0, cal.c0);
  EXPECT_EQ(back.delta0, cal.delta0);
  EXPECT_EQ(back.eps0, cal.eps0);
  EXPECT_NO_THROW(back.check_matches(cfg));
  cfg.r = 1.0;
  EXPECT_THROW(back.check_matches(cfg), Error);
}

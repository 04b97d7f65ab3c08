#include <gtest/gtest.h>

#include <cmath>

#include "hsns/besov.hpp"
#include "hsns/error.hpp"
#include "hsns/inverse_ft.hpp"
#include "hsns/kernels.hpp"
#include "hsns/spectral_ops.hpp"
#include "hsns/verify.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hsns;
using testing_support::rel;
using testing_support::single_mode;
using testing_support::small_grid;

TEST(Kernel, Values) {
  EXPECT_DOUBLE_EQ(kernel_value(1, 1.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(kernel_value(5, 1.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(kernel_value(4, 1.0, -2.0), -2.0 * std::exp(-2.0));
  EXPECT_DOUBLE_EQ(kernel_value(2, 3.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(kernel_value(2, 1.0, -1.0), -std::exp(-1.0));
  EXPECT_DOUBLE_EQ(kernel_value(3, 2.0, 0.5), 2.0 * std::exp(-1.0));
  EXPECT_THROW(kernel_value(1, 0.0, 1.0), Error);
  EXPECT_THROW(kernel_value(6, 1.0, 1.0), Error);
  for (int j = 1; j <= 5; ++j) {
    for (double z : {-3.0, -0.2, 0.0, 0.7, 4.0}) EXPECT_DOUBLE_EQ(kernel_value(j, 1.3, z), oracle::kernel(j, 1.3, z));
  }
}

TEST(Poisson, IdentityEigenfunctionSemigroup) {
  const Grid g = small_grid(2, 16);
  Rng rng(1);
  const auto f = random_tangential(g, 2, rng, 6);
  EXPECT_EQ(max_abs_diff(poisson_apply(0.0, f), f), 0.0);
  const auto mode = single_mode(g, {2, 3});
  const double kappa = g.kappa(g.mode_index(std::vector<int>{2, 3}));
  auto expected = mode;
  expected *= std::exp(-1.7 * kappa);
  EXPECT_LE(max_abs_diff(poisson_apply(1.7, mode), expected), 1e-15);
  EXPECT_LE(max_abs_diff(poisson_apply(0.4, poisson_apply(1.1, f)), poisson_apply(1.5, f)), 1e-13 * f.max_abs());
}

TEST(Poisson, BlockEnvelope) {
  const auto rep = semigroup_check(small_grid(2, 32, 16), 2, 5);
  EXPECT_LE(rep.eigen_error, 1e-12);
  EXPECT_LE(rep.composition_error, 1e-13);
  EXPECT_GE(rep.fitted_c, 0.4);
  EXPECT_LE(rep.fitted_C, 4.0);
}

TEST(LOperator, ZeroSource) {
  const Grid g = small_grid();
  HalfSpaceField G(g, 1, true);
  for (int j = 1; j <= 5; ++j) EXPECT_TRUE(L_operator(j, Sign::Minus, G, 0.3).is_zero());
}

TEST(LOperator, TailOnlyFirstKernel) {
  const Grid g = small_grid(2, 16, 8);
  const auto profile = single_mode(g, {2, 1});
  HalfSpaceField G(g, 1, true);
  G.set_tail(profile);
  for (int m = 0; m < g.slab_count(); ++m) G.slab(m) = profile;
  const std::size_t mode = g.mode_index(std::vector<int>{2, 1});
  const double kappa = g.kappa(mode);
  for (double x : {0.0, 0.3, 2.0, 7.9, 12.0}) {
    const cplx v = L_operator(1, Sign::Plus, G, x)(0, mode);
    EXPECT_LE(std::abs(v - 0.5 * 2.0 / kappa), 1e-13 / kappa);
  }
  std::vector<cplx> slabs(g.slab_count(), 0.5);
  const cplx tail = 0.5;
  EXPECT_LE(std::abs(oracle::L_quadrature(1, Sign::Plus, kappa, g, slabs, &tail, 1.3) - 1.0 / kappa), 1e-10 / kappa);
}

TEST(LOperator, ClosedFormMatchesQuadrature) {
  const Grid g = small_grid(2, 16, 8);
  Rng rng(2);
  for (bool tail : {false, true}) {
    const auto G = random_halfspace(g, 1, rng, 6, tail);
    const std::vector<double> heights{0.0, 0.5, 1.9, 3.0, 7.5, 9.0};
    for (std::vector<int> k : {std::vector<int>{1, 0}, {3, -2}, {7, 7}}) {
      const std::size_t mode = g.mode_index(k);
      const double kappa = g.kappa(mode);
      std::vector<cplx> slabs(g.slab_count());
      for (int m = 0; m < g.slab_count(); ++m) slabs[m] = G.slab(m)(0, mode);
      const cplx tail_value = tail ? G.tail()(0, mode) : cplx(0.0);
      for (int j = 1; j <= 5; ++j) {
        for (Sign s : {Sign::Plus, Sign::Minus}) {
          const auto values = L_operator(j, s, G, heights);
          double scale = 0.0, err = 0.0;
          for (std::size_t h = 0; h < heights.size(); ++h) {
            const cplx ref = oracle::L_quadrature(j, s, kappa, g, slabs, tail ? &tail_value : nullptr, heights[h]);
            scale = std::max(scale, std::abs(ref));
            err = std::max(err, std::abs(values[h](0, mode) - ref));
          }
          EXPECT_LE(err, 1e-10 * scale) << "j=" << j << " tail=" << tail;
        }
      }
    }
  }
}

TEST(LOperator, LimitAtInfinity) {
  const Grid g = small_grid(2, 16, 8);
  Rng rng(3);
  const auto G = random_halfspace(g, 1, rng, 6, true);
  for (int j = 1; j <= 5; ++j) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const auto far = L_operator(j, s, G, 400.0);
      const auto lim = L_operator_at_infinity(j, s, G);
      EXPECT_LE(max_abs_diff(far, lim), 1e-9 * std::max(1.0, lim.max_abs())) << "j=" << j;
    }
  }
}

TEST(LOperator, AnalyticDerivativesMatchDifferences) {
  // dL1 = -κ L2, dL2 = -κ L1 + 2G, dL3 = -κ L4, dL4 = κ L5, dL5 = -2κ L2 + κ L4
  const Grid g = small_grid(2, 8, 8);
  Rng rng(4);
  const auto G = random_halfspace(g, 1, rng, 3, true);
  const double x = 2.3, eps = 1e-5;
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    std::vector<TangentialField> v, dv;
    for (int j = 1; j <= 5; ++j) {
      v.push_back(L_operator(j, s, G, x));
      auto diff = L_operator(j, s, G, x + eps) - L_operator(j, s, G, x - eps);
      diff *= 1.0 / (2 * eps);
      dv.push_back(diff);
    }
    const auto kappa_times = [&](const TangentialField& f, double c) {
      return apply_multiplier(f, [c](std::span<const double>, double k) { return cplx(c * k); });
    };
    const TangentialField& Gx = G.slab(static_cast<int>(x / g.slab_width()));
    const double tol = 1e-7 * v[0].max_abs();
    EXPECT_LE(max_abs_diff(dv[0], kappa_times(v[1], -1)), tol);
    EXPECT_LE(max_abs_diff(dv[1], kappa_times(v[0], -1) + 2.0 * Gx), tol);
    EXPECT_LE(max_abs_diff(dv[2], kappa_times(v[3], -1)), tol);
    EXPECT_LE(max_abs_diff(dv[3], kappa_times(v[4], 1)), tol);
    EXPECT_LE(max_abs_diff(dv[4], kappa_times(v[1], -2) + kappa_times(v[3], 1)), tol);
  }
}

TEST(Traces, BoundaryIdentities) {
  const Grid g = small_grid(2, 16, 16);
  const auto rep = trace_identity_check(g, 6, 9);
  EXPECT_LE(rep.l4_plus, 1e-12);
  EXPECT_LE(rep.l5_minus, 1e-12);
  EXPECT_LE(rep.l2_minus_sum, 1e-12);
  EXPECT_LE(rep.trace_consistency, 1e-13);
}

TEST(Traces, SpecializedFormsAgreeWithOperator) {
  const Grid g = small_grid(2, 16, 16);
  Rng rng(5);
  for (bool tail : {false, true}) {
    const auto G = random_halfspace(g, 2, rng, 6, tail);
    const double scale = L_operator(1, Sign::Plus, G, 0.0).max_abs();
    EXPECT_LE(max_abs_diff(trace_L1plus(G), L_operator(1, Sign::Plus, G, 0.0)), 1e-13 * scale);
    EXPECT_LE(max_abs_diff(trace_L3plus(G), L_operator(3, Sign::Plus, G, 0.0)), 1e-13 * scale);
    EXPECT_LE(max_abs_diff(trace_L4minus(G), L_operator(4, Sign::Minus, G, 0.0)), 1e-13 * scale);
  }
  EXPECT_TRUE(trace_L1plus(HalfSpaceField(g, 1)).is_zero());
}

TEST(Traces, DissipativeEnvelopeOfOperator) {
  // ‖Δ_j L(x)‖_2 <= C ∫ e^{-c 2^j |x-y|} ‖Δ_j G(y)‖_2 dy with c = 1/4, C = 4
  const Grid g = small_grid(2, 16, 16);
  Rng rng(6);
  const auto G = random_halfspace(g, 1, rng, 6);
  const auto range = DyadicRange::for_grid(g);
  const BlockWeights blocks(g);
  std::vector<std::vector<double>> slab_norms;
  for (int m = 0; m < g.slab_count(); ++m) slab_norms.push_back(block_lp_norms(G.slab(m), 2.0, blocks));
  const double h = g.slab_width();
  for (int j = 1; j <= 5; ++j) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      for (double x : {0.0, 1.1, 4.05, 7.9}) {
        const auto norms = block_lp_norms(L_operator(j, s, G, x), 2.0, blocks);
        for (int b = range.j_min; b <= range.j_max; ++b) {
          const double c = 0.25 * std::ldexp(1.0, b);
          double bound = 0.0;
          for (int m = 0; m < g.slab_count(); ++m) {
            const double y0 = m * h, y1 = y0 + h;
            auto prim = [&](double a, double bb) {  // ∫_a^bb e^{-c|x-y|} dy
              auto F = [&](double y) { return y <= x ? std::exp(-c * (x - y)) / c : 2.0 / c - std::exp(-c * (y - x)) / c; };
              return F(bb) - F(a);
            };
            bound += prim(y0, y1) * slab_norms[m][b - range.j_min];
          }
          EXPECT_LE(norms[b - range.j_min], 4.0 * bound * (1 + 1e-12) + 1e-300) << "j=" << j << " block=" << b;
        }
      }
    }
  }
}

TEST(InverseFt, Examples) {
  const auto s1 = inverse_ft_oracle(1, 1.0, 0.0);
  EXPECT_DOUBLE_EQ(s1.closed_form, 0.5);
  EXPECT_LE(std::abs(s1.quadrature - 0.5), 1e-6 * 0.5);
  EXPECT_DOUBLE_EQ(inverse_ft_closed_form(5, 1.0, 1.0), 0.0);
  EXPECT_LE(std::abs(inverse_ft_oracle(5, 1.0, 1.0).quadrature), 1e-8);
  EXPECT_DOUBLE_EQ(inverse_ft_closed_form(4, 2.0, 0.0), 0.0);
  EXPECT_EQ(inverse_ft_oracle(4, 2.0, 0.0).quadrature, 0.0);
  EXPECT_THROW(inverse_ft_closed_form(1, -1.0, 0.0), Error);
}

TEST(InverseFt, BatteryWithinTolerance) {
  for (const auto& s : kernel_battery(10, 99)) {
    EXPECT_LE(s.rel_error, 1e-6) << "identity " << s.j << " kappa=" << s.kappa << " z=" << s.z;
  }
}

TEST(InverseFt, KernelsAreScaledTransforms) {
  // K1 = 2κ F^{-1}[1/(κ²+ξ²)], K3 = 4κ³ F^{-1}[1/(κ²+ξ²)²]
  for (double kappa : {0.3, 1.0, 4.0}) {
    for (double z : {-2.0, 0.0, 0.5}) {
      EXPECT_LE(rel(2 * kappa * inverse_ft_closed_form(1, kappa, z), kernel_value(1, kappa, z)), 1e-15);
      EXPECT_LE(rel(4 * kappa * kappa * kappa * inverse_ft_closed_form(3, kappa, z), kernel_value(3, kappa, z)), 1e-15);
    }
  }
}

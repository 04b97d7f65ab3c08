#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hsns/error.hpp"
#include "hsns/spectral_ops.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hsns;
using testing_support::single_mode;
using testing_support::small_grid;

TEST(Grid, FrequencyBounds) {
  const Grid g(2, 64, 16.0 * std::numbers::pi, 64, 8.0);
  EXPECT_DOUBLE_EQ(g.kappa_min(), 0.125);
  EXPECT_DOUBLE_EQ(g.kappa_max(), std::numbers::pi * 64 * std::sqrt(2.0) / (16.0 * std::numbers::pi));
  EXPECT_DOUBLE_EQ(g.slab_width(), 0.125);
  double lo = 1e300, hi = 0.0;
  for (std::size_t m = 0; m < g.modes(); ++m) {
    if (!g.active(m)) continue;
    lo = std::min(lo, g.kappa(m));
    hi = std::max(hi, g.kappa(m));
  }
  EXPECT_GE(lo, g.kappa_min() * (1 - 1e-15));
  EXPECT_LE(hi, g.kappa_max());
}

TEST(Grid, DyadicRangeCoversFrequencies) {
  for (int n : {8, 16, 64}) {
    for (double L : {1.0, 2.0 * std::numbers::pi, 16.0 * std::numbers::pi, 100.0}) {
      for (int d : {2, 3}) {
        const Grid g(d, n, L, 4, 1.0);
        const auto r = DyadicRange::for_grid(g);
        EXPECT_LE(std::ldexp(1.0, r.j_min - 1), g.kappa_min());
        EXPECT_GE(std::ldexp(1.0, r.j_max + 1), g.kappa_max());
      }
    }
  }
}

TEST(Grid, RejectsBadParameters) {
  EXPECT_THROW(Grid(4, 16, 1.0), Error);
  EXPECT_THROW(Grid(2, 12, 1.0), Error);
  EXPECT_THROW(Grid(2, 16, -1.0), Error);
  EXPECT_THROW(Grid(2, 16, 1.0, 0, 1.0), Error);
  EXPECT_THROW(Grid(2, 16, 1.0, 4, 0.0), Error);
}

TEST(Grid, PartnerIsNegatedIndex) {
  const Grid g = small_grid(3, 8, 2);
  for (std::size_t m = 0; m < g.modes(); ++m) {
    auto k = g.multi_index(m);
    bool nyquist = false;
    for (int& v : k) {
      nyquist = nyquist || v == -4;
      v = -v;
    }
    if (nyquist) continue;
    EXPECT_EQ(g.partner(m), g.mode_index(k));
  }
}

TEST(TangentialField, RoundTripAndHermitian) {
  const Grid g = small_grid(2, 32);
  Rng rng(7);
  const auto f = random_tangential(g, 2, rng, 6);
  const auto values = f.to_physical();
  const auto back = TangentialField::from_physical(g, 2, values);
  EXPECT_LE(max_abs_diff(back, f), 1e-13 * f.max_abs());
  EXPECT_LE(f.hermitian_defect(), 1e-15);
  for (int c = 0; c < 2; ++c) EXPECT_EQ(f(c, 0), cplx(0.0));
}

TEST(TangentialField, FromPhysicalRemovesMean) {
  const Grid g = small_grid(2, 8);
  std::vector<double> ones(g.modes(), 3.0);
  const auto f = TangentialField::from_physical(g, 1, ones);
  EXPECT_TRUE(f.is_zero());
}

TEST(TangentialField, Parseval) {
  const Grid g = small_grid(3, 16);
  Rng rng(3);
  const auto f = random_tangential(g, 1, rng, 5);
  const auto values = f.to_physical();
  double phys = 0.0;
  for (double v : values) phys += v * v;
  phys *= g.cell_volume();
  double spec = 0.0;
  for (auto c : f.component(0)) spec += std::norm(c);
  spec *= g.torus_volume();
  EXPECT_NEAR(phys, spec, 1e-12 * spec);
}

TEST(Multiplier, IdentityAndLaplacian) {
  const Grid g = small_grid();
  Rng rng(1);
  const auto f = random_tangential(g, 1, rng, 5);
  const auto same = apply_multiplier(f, [](std::span<const double>, double) { return cplx(1.0); });
  EXPECT_EQ(max_abs_diff(same, f), 0.0);

  const auto mode = single_mode(g, {3, -2});
  const auto lap = apply_multiplier(mode, [](std::span<const double>, double k) { return cplx(k * k); });
  const double expected = std::pow(2.0 * std::numbers::pi * std::sqrt(13.0) / g.period(), 2);
  auto scaled = mode;
  scaled *= expected;
  EXPECT_LE(max_abs_diff(lap, scaled), 1e-15);
}

TEST(Multiplier, AbsoluteSymbolKeepsFieldReal) {
  const Grid g = small_grid(2, 32);
  Rng rng(2);
  const auto f = random_tangential(g, 1, rng, 8);
  const auto out = apply_multiplier(f, [](std::span<const double>, double k) { return cplx(k); });
  EXPECT_LE(out.hermitian_defect(), 1e-12 * out.max_abs());
  // the imaginary residue of the physical values, by direct summation
  double imag = 0.0;
  const int N = g.points();
  for (int i = 0; i < N; i += 5) {
    for (int j = 0; j < N; j += 7) {
      cplx acc = 0.0;
      for (std::size_t m = 0; m < g.modes(); ++m) {
        const auto xi = g.xi(m);
        acc += out(0, m) * std::polar(1.0, (xi[0] * i + xi[1] * j) * g.period() / N);
      }
      imag = std::max(imag, std::abs(acc.imag()));
    }
  }
  EXPECT_LE(imag, 1e-12);
}

TEST(Multiplier, NonFiniteSymbolRejected) {
  const Grid g = small_grid();
  Rng rng(1);
  const auto f = random_tangential(g, 1, rng, 5);
  try {
    apply_multiplier(f, [](std::span<const double>, double) { return cplx(std::nan("")); });
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Data);
  }
}

TEST(Riesz, CosineBecomesMinusSine) {
  const Grid g = small_grid(2, 32);
  const auto f = single_mode(g, {3, 0});
  const auto r = riesz_transform(1, f);
  const auto values = r.to_physical();
  const double k = 3.0 * 2.0 * std::numbers::pi / g.period();
  const double dx = g.period() / g.points();
  double err = 0.0;
  for (int i = 0; i < g.points(); ++i) {
    for (int j = 0; j < g.points(); ++j) {
      err = std::max(err, std::abs(values[i * g.points() + j] + std::sin(k * i * dx)));
    }
  }
  EXPECT_LE(err, 1e-12);
}

TEST(Riesz, SumOfSquaresIsMinusIdentity) {
  for (int d : {2, 3}) {
    const Grid g = small_grid(d, 16);
    Rng rng(4);
    const auto f = random_tangential(g, 1, rng, 6);
    TangentialField sum(g, 1);
    for (int l = 1; l <= d; ++l) sum += riesz_transform(l, riesz_transform(l, f));
    sum += f;
    EXPECT_LE(sum.max_abs(), 1e-12);
  }
}

TEST(Riesz, TransverseAxisAnnihilates) {
  const Grid g = small_grid(2, 16);
  TangentialField f(g, 1);
  for (int k = 1; k < 6; ++k) f += single_mode(g, {k, 0});
  EXPECT_TRUE(riesz_transform(2, f).is_zero());
  EXPECT_THROW(riesz_transform(3, f), Error);
}

TEST(LittlewoodPaley, PartitionOfUnity) {
  for (int d : {2, 3}) {
    const Grid g = small_grid(d, 16);
    const auto range = DyadicRange::for_grid(g);
    for (std::size_t m = 0; m < g.modes(); ++m) {
      if (!g.active(m)) continue;
      double s = 0.0;
      for (int j = range.j_min; j <= range.j_max; ++j) s += phi_hat(j, g.kappa(m));
      EXPECT_NEAR(s, 1.0, 1e-14);
    }
    Rng rng(5);
    const auto f = random_tangential(g, 2, rng, 6);
    TangentialField total(g, 2);
    for (int j = range.j_min; j <= range.j_max; ++j) total += lp_block(j, f);
    EXPECT_LE(max_abs_diff(total, f), 1e-12);
    EXPECT_TRUE(lp_block(range.j_max + 1, f).is_zero());
    EXPECT_TRUE(lp_block(range.j_min - 1, f).is_zero());
  }
}

TEST(LittlewoodPaley, DyadicModeLivesNearItsBlock) {
  const Grid g = small_grid(2, 64);
  // |k| 2π/L = 2^{j0} with L = 16π: k = 8 * 2^{j0}
  for (int j0 : {-3, -2, -1, 0, 1}) {
    const int k = 1 << (j0 + 3);
    const auto f = single_mode(g, {k, 0});
    const auto range = DyadicRange::for_grid(g);
    for (int j = range.j_min; j <= range.j_max; ++j) {
      if (std::abs(j - j0) >= 2) {
        EXPECT_TRUE(lp_block(j, f).is_zero()) << "j=" << j << " j0=" << j0;
      }
    }
  }
}

TEST(LittlewoodPaley, DistantBlocksAreOrthogonal) {
  const Grid g = small_grid(2, 64);
  Rng rng(6);
  const auto f = random_tangential(g, 1, rng, 30);
  const auto range = DyadicRange::for_grid(g);
  for (int j = range.j_min; j <= range.j_max; ++j) {
    for (int jp = range.j_min; jp <= range.j_max; ++jp) {
      if (std::abs(j - jp) >= 2) {
        EXPECT_TRUE(lp_block(j, lp_block(jp, f)).is_zero());
      }
    }
  }
}

TEST(Calculus, DivGradIsMinusLaplacian) {
  const Grid g = small_grid(3, 16);
  Rng rng(8);
  const auto f = random_tangential(g, 1, rng, 6);
  const auto dg = tangential_div(tangential_grad(f));
  const auto lap = apply_multiplier(f, [](std::span<const double>, double k) { return cplx(-k * k); });
  EXPECT_LE(max_abs_diff(dg, lap), 1e-13 * lap.max_abs());
}

TEST(Calculus, GradientOfConstantVanishes) {
  const Grid g = small_grid();
  TangentialField c(g, 1);
  c(0, 0) = 5.0;
  EXPECT_TRUE(tangential_grad(c).is_zero());
}

TEST(Calculus, CurlFieldIsDivergenceFree) {
  const Grid g = small_grid(2, 32);
  Rng rng(9);
  const auto psi = random_tangential(g, 1, rng, 8);
  const auto grad = tangential_grad(psi);
  TangentialField v(g, 2);
  v.set_slice(0, -1.0 * grad.slice(1, 1));
  v.set_slice(1, grad.slice(0, 1));
  EXPECT_LE(tangential_div(v).max_abs(), 1e-12);
}

TEST(Calculus, OperationsPreserveZeroMean) {
  const Grid g = small_grid(2, 16);
  Rng rng(10);
  const auto f = random_tangential(g, 2, rng, 6);
  EXPECT_EQ(riesz_transform(1, f)(0, 0), cplx(0.0));
  EXPECT_EQ(leray_project(f)(0, 0), cplx(0.0));
  EXPECT_EQ(inverse_laplacian(f)(1, 0), cplx(0.0));
  EXPECT_EQ(product(f.slice(0, 1), f.slice(1, 1))(0, 0), cplx(0.0));
}

TEST(Calculus, LerayProjectionIsDivergenceFreeProjector) {
  const Grid g = small_grid(3, 16);
  Rng rng(11);
  const auto v = random_tangential(g, 3, rng, 6);
  const auto pv = leray_project(v);
  EXPECT_LE(tangential_div(pv).max_abs(), 1e-13 * v.max_abs());
  EXPECT_LE(max_abs_diff(leray_project(pv), pv), 1e-14);
}

TEST(Product, MatchesDenseConvolution) {
  const Grid g = small_grid(2, 8);
  Rng rng(12);
  const auto f = random_tangential(g, 1, rng, 3);
  const auto h = random_tangential(g, 1, rng, 3);
  EXPECT_LE(max_abs_diff(product(f, h), oracle::dense_product(f, h)), 1e-15);
}

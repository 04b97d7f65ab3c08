#include "hsns/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hsns/besov.hpp"
#include "hsns/inverse_ft.hpp"
#include "hsns/kernels.hpp"
#include "hsns/parallel.hpp"
#include "hsns/random_fields.hpp"
#include "hsns/spectral_ops.hpp"
#include "hsns/stokes.hpp"

namespace hsns {

CheckResult make_check(const std::string& name, double value, double threshold, bool at_least) {
  const bool ok = std::isfinite(value) && (at_least ? value >= threshold : value <= threshold);
  return {name, value, threshold, ok};
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<KernelSample> kernel_battery(int samples, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> kappa_dist(0.1, 10.0);
  std::uniform_real_distribution<double> z_dist(-5.0, 5.0);
  std::vector<std::pair<double, double>> points(samples);
  for (auto& [k, z] : points) {
    k = kappa_dist(rng);
    z = z_dist(rng);
  }
  std::vector<KernelSample> out(static_cast<std::size_t>(samples) * 5);
  ExceptionTrap trap;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < samples * 5; ++i) {
    trap.run([&] {
      const int j = i % 5 + 1;
      const auto [kappa, z] = points[i / 5];
      const auto s = inverse_ft_oracle(j, kappa, z);
      out[i] = {j, kappa, z, s.quadrature, s.closed_form, inverse_ft_relative_error(s, j, kappa, z)};
    });
  }
  trap.rethrow();
  return out;
}

double TraceIdentityReport::max() const {
  return std::max({l4_plus, l5_minus, l2_minus_sum, trace_consistency});
}

TraceIdentityReport trace_identity_check(const Grid& grid, int fields, std::uint64_t seed) {
  Rng rng(seed);
  TraceIdentityReport rep;
  for (int t = 0; t < fields; ++t) {
    const auto G = random_halfspace(grid, 1, rng, default_band(grid), t % 2 == 1);
    const auto l1 = L_operator(1, Sign::Plus, G, 0.0);
    const double scale = std::max(l1.max_abs(), 1e-300);
    rep.l4_plus = std::max(rep.l4_plus, L_operator(4, Sign::Plus, G, 0.0).max_abs() / scale);
    rep.l5_minus = std::max(rep.l5_minus, L_operator(5, Sign::Minus, G, 0.0).max_abs() / scale);
    rep.l2_minus_sum = std::max(rep.l2_minus_sum, (L_operator(2, Sign::Minus, G, 0.0) + l1).max_abs() / scale);
    rep.trace_consistency = std::max(rep.trace_consistency, max_abs_diff(trace_L1plus(G), l1) / scale);
  }
  return rep;
}

SemigroupReport semigroup_check(const Grid& grid, int fields, std::uint64_t seed) {
  SemigroupReport rep;
  const DyadicRange range = DyadicRange::for_grid(grid);
  const BlockWeights blocks(grid);
  std::vector<double> heights;
  for (int m = 0; m <= grid.slab_count(); ++m) heights.push_back(m * grid.slab_width());

  for (const auto& group : grid.table().canonical_groups) {
    const std::size_t mode = group.modes.front();
    TangentialField f(grid, 1);
    f(0, mode) = 1.0;
    f(0, grid.partner(mode)) = 1.0;
    for (double x : heights) {
      auto expected = f;
      expected *= std::exp(-x * group.kappa);
      rep.eigen_error = std::max(rep.eigen_error, max_abs_diff(poisson_apply(x, f), expected));
    }
  }

  Rng rng(seed);
  rep.fitted_c = kInfinity;
  for (int t = 0; t < fields; ++t) {
    const auto f = random_tangential(grid, 1, rng, default_band(grid));
    const double scale = f.max_abs();
    for (std::size_t a = 0; a < heights.size(); ++a) {
      const std::size_t b = heights.size() - 1 - a;
      const auto composed = poisson_apply(heights[a], poisson_apply(heights[b], f));
      const auto direct = poisson_apply(heights[a] + heights[b], f);
      rep.composition_error = std::max(rep.composition_error, max_abs_diff(composed, direct) / scale);
    }
    for (double p : {1.0, 2.0, kInfinity}) {
      const auto base = block_lp_norms(f, p, blocks);
      const double base_max = *std::max_element(base.begin(), base.end());
      for (double x : heights) {
        const auto moved = block_lp_norms(poisson_apply(x, f), p, blocks);
        for (int j = range.j_min; j <= range.j_max; ++j) {
          const double b0 = base[j - range.j_min];
          const double ratio = moved[j - range.j_min] / b0;
          if (b0 <= 1e-12 * base_max || !(ratio > 1e-250)) continue;
          const double growth = std::ldexp(x, j);
          rep.fitted_C = std::max(rep.fitted_C, ratio * std::exp(0.4 * growth));
          if (x > 0.0) rep.fitted_c = std::min(rep.fitted_c, (std::log(4.0) - std::log(ratio)) / growth);
        }
      }
    }
  }
  return rep;
}

BoundaryVariantReport boundary_variant_check(const Grid& grid, double kappa_target) {
  const int d = grid.dim();
  std::vector<int> k(d, 0);
  k[0] = std::clamp(static_cast<int>(std::lround(kappa_target / grid.kappa_min())), 1, grid.points() / 2 - 1);
  const std::size_t mode = grid.mode_index(k);
  TangentialField a(grid, d + 1);
  a(d, mode) = 1.0;
  a(d, grid.partner(mode)) = 1.0;

  BoundaryVariantReport rep;
  rep.normal_size = 1.0;
  const auto heights = sample_heights(grid);
  auto residual = [&](BoundaryVariant variant) {
    const auto s = boundary_samples(a, heights, true, variant);
    double worst = 0.0;
    for (std::size_t h = 0; h < heights.size(); ++h) {
      for (std::size_t m = 0; m < grid.modes(); ++m) {
        if (!grid.active(m)) continue;
        cplx div = s.derivative[h](d, m);
        const auto xi = grid.xi(m);
        for (int l = 0; l < d; ++l) div += cplx(0.0, xi[l]) * s.value[h](l, m);
        worst = std::max(worst, std::abs(div));
      }
    }
    return worst;
  };
  rep.derived = residual(BoundaryVariant::Derived);
  rep.riesz_variant = residual(BoundaryVariant::Riesz);
  return rep;
}

std::vector<CheckResult> run_verify_suite(const RunConfig& cfg) {
  const Grid grid = cfg.grid();
  const SolverConfig solver = cfg.solver();
  const int n = solver.n();
  std::vector<CheckResult> out;

  double kernel_err = 0.0;
  for (const auto& s : kernel_battery(50, cfg.seed)) kernel_err = std::max(kernel_err, s.rel_error);
  out.push_back(make_check("kernel_inverse_ft", kernel_err, 1e-6));

  const auto tr = trace_identity_check(grid, 10, cfg.seed);
  out.push_back(make_check("trace_L4_plus_zero", tr.l4_plus, 1e-12));
  out.push_back(make_check("trace_L5_minus_zero", tr.l5_minus, 1e-12));
  out.push_back(make_check("trace_L2_minus_opposite", tr.l2_minus_sum, 1e-12));

  const auto sg = semigroup_check(grid, 3, cfg.seed);
  out.push_back(make_check("poisson_eigenfunction", sg.eigen_error, 1e-12));
  out.push_back(make_check("poisson_composition", sg.composition_error, 1e-13));
  out.push_back(make_check("poisson_envelope_c", sg.fitted_c, 0.4, true));
  out.push_back(make_check("poisson_envelope_C", sg.fitted_C, 4.0));

  double partition = 0.0;
  const DyadicRange range = DyadicRange::for_grid(grid);
  for (std::size_t m = 0; m < grid.modes(); ++m) {
    if (!grid.active(m)) continue;
    double sum = 0.0;
    for (int j = range.j_min; j <= range.j_max; ++j) sum += phi_hat(j, grid.kappa(m));
    partition = std::max(partition, std::abs(sum - 1.0));
  }
  out.push_back(make_check("partition_of_unity", partition, 1e-14));

  const auto bv = boundary_variant_check(grid);
  out.push_back(make_check("boundary_divergence", bv.derived, 1e-12));
  out.push_back(make_check("boundary_riesz_variant_divergence", bv.riesz_variant, 1e-3 * bv.normal_size, true));

  Rng rng(cfg.seed);
  const bool tail = !std::isfinite(solver.q);
  double trace = 0.0, div = 0.0, evo = 0.0;
  for (int t = 0; t < 3; ++t) {
    const auto a = random_tangential(grid, n, rng, default_band(grid));
    const auto F = random_halfspace(grid, n * n, rng, default_band(grid), tail);
    const auto sol = linear_solve_detailed(a, F);
    const auto diag = linear_diagnostics(a, sol, solver.p, solver.r);
    trace = std::max(trace, diag.trace_residual);
    div = std::max({div, diag.divergence_residual, diag.whole_space_divergence});
    evo = std::max(evo, diag.evolution_residual);
  }
  out.push_back(make_check("linear_trace", trace, 1e-10));
  out.push_back(make_check("linear_divergence", div, 1e-10));
  out.push_back(make_check("linear_evolution", evo, 1e-10));

  double bony = 0.0, scaling = 0.0;
  for (int t = 0; t < 3; ++t) {
    const auto f = random_tangential(grid, 1, rng, default_band(grid));
    const auto g = random_tangential(grid, 1, rng, default_band(grid));
    const auto parts = bony_decompose(f, g);
    const auto fg = product(f, g);
    const auto sum = parts.low_high + parts.resonant + parts.high_low;
    bony = std::max(bony, max_abs_diff(sum, fg) / std::max(fg.max_abs(), 1e-300));
    const auto a = random_tangential(grid, n, rng, default_band(grid));
    const double before = besov_norm(a, solver.boundary_index());
    const double after = besov_norm(dyadic_rescale(a, 1, 1.0), solver.boundary_index());
    scaling = std::max(scaling, std::abs(after - before) / before);
  }
  out.push_back(make_check("bony_identity", bony, 1e-12));
  out.push_back(make_check("besov_critical_scaling", scaling, 1e-10));
  return out;
}

}  // namespace hsns

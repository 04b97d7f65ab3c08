#include "hsns/stokes.hpp"

#include <algorithm>
#include <cmath>

#include "hsns/error.hpp"
#include "hsns/kernels.hpp"
#include "hsns/parallel.hpp"
#include "hsns/random_fields.hpp"

namespace hsns {

namespace {

constexpr cplx I(0.0, 1.0);

void require_boundary(const TangentialField& a) {
  if (a.components() != a.grid().dim() + 1) fail(ErrorKind::Data, "boundary data must have n components");
}

void require_force(const HalfSpaceField& F) {
  const int n = F.grid().dim() + 1;
  if (F.components() != n * n) fail(ErrorKind::Data, "force must have n*n components");
}

HalfSpaceField from_samples(const Grid& grid, const std::vector<TangentialField>& values, int offset) {
  HalfSpaceField out(grid, values.front().components());
  for (int m = 0; m < grid.slab_count(); ++m) out.slab(m) = values[offset + m];
  return out;
}

}  // namespace

std::vector<double> sample_heights(const Grid& grid) {
  std::vector<double> h{0.0};
  for (double c : grid.slab_centers()) h.push_back(c);
  return h;
}

HeightSamples boundary_samples(const TangentialField& a, std::span<const double> heights, bool derivatives,
                               BoundaryVariant variant) {
  require_boundary(a);
  const Grid& grid = a.grid();
  const int d = grid.dim();
  const int n = d + 1;
  HeightSamples out;
  out.heights.assign(heights.begin(), heights.end());
  out.value.assign(heights.size(), TangentialField(grid, n));
  if (derivatives) out.derivative.assign(heights.size(), TangentialField(grid, n));
  for (std::size_t mode = 0; mode < grid.modes(); ++mode) {
    if (!grid.active(mode)) continue;
    const auto xi = grid.xi(mode);
    const double kappa = grid.kappa(mode);
    cplx xa = 0.0;
    for (int l = 0; l < d; ++l) xa += xi[l] * a(l, mode);
    const cplx an = a(d, mode);
    for (std::size_t h = 0; h < heights.size(); ++h) {
      const double x = heights[h];
      const double E = std::exp(-x * kappa);
      TangentialField& u = out.value[h];
      u(d, mode) = E * ((1.0 + x * kappa) * an - I * x * xa);
      for (int l = 0; l < d; ++l) {
        const cplx normal_term = variant == BoundaryVariant::Derived ? -I * x * xi[l] * an : I * (xi[l] / kappa) * an;
        u(l, mode) = E * (a(l, mode) - x * (xi[l] / kappa) * xa + normal_term);
      }
      if (!derivatives) continue;
      TangentialField& du = out.derivative[h];
      du(d, mode) = -kappa * u(d, mode) + E * (kappa * an - I * xa);
      for (int l = 0; l < d; ++l) {
        cplx extra = -(xi[l] / kappa) * xa;
        if (variant == BoundaryVariant::Derived) extra -= I * xi[l] * an;
        du(l, mode) = -kappa * u(l, mode) + E * extra;
      }
    }
  }
  return out;
}

HalfSpaceField boundary_operator(const TangentialField& a) {
  const auto centres = a.grid().slab_centers();
  return from_samples(a.grid(), boundary_samples(a, centres, false).value, 0);
}

HeightSamples whole_space_samples(const HalfSpaceField& F, std::span<const double> heights, bool derivatives) {
  require_force(F);
  const Grid& grid = F.grid();
  const int d = grid.dim();
  const int n = d + 1;
  const std::size_t H = heights.size();
  HeightSamples out;
  out.heights.assign(heights.begin(), heights.end());
  out.value.assign(H, TangentialField(grid, n));
  if (derivatives) out.derivative.assign(H, TangentialField(grid, n));
  const auto& groups = grid.table().canonical_groups;
  const std::vector<double> hs(heights.begin(), heights.end());
  ExceptionTrap trap;

#pragma omp parallel
  {
    KernelWeights W(grid, hs, F.has_tail());
    const int S = W.source_count();
    // per-source combinations: A_k (d), B_k (d), S3, T1, T2, Fnn
    std::vector<std::vector<cplx>> A(d, std::vector<cplx>(S)), B(d, std::vector<cplx>(S));
    std::vector<cplx> S3(S), T1(S), T2(S), Fnn(S);
    auto dot = [S](const double* w, const std::vector<cplx>& v) {
      cplx acc = 0.0;
      for (int s = 0; s < S; ++s) acc += w[s] * v[s];
      return acc;
    };
    auto at = [&W](const std::vector<cplx>& v, int h) {
      const int s = W.source_at(h);
      return s < 0 ? cplx(0.0) : v[s];
    };
    std::vector<cplx> R(d);
    std::vector<cplx> value(n), deriv(n);

#pragma omp for schedule(dynamic)
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const double kappa = groups[g].kappa;
      if (!trap.run([&] { W.compute(kappa); })) continue;
      for (std::size_t mode : groups[g].modes) {
        const auto xi = grid.xi(mode);
        for (int l = 0; l < d; ++l) R[l] = I * xi[l] / kappa;
        for (int s = 0; s < S; ++s) {
          const TangentialField& Fs = F.block(s);
          auto f = [&](int k, int l) { return Fs(tensor_index(n, k, l), mode); };
          cplx s3 = 0.0, t1 = 0.0, t2 = 0.0;
          for (int k = 0; k < d; ++k) {
            cplx ak = 0.0;
            for (int m = 0; m < d; ++m) {
              ak += R[m] * f(k, m);
              s3 += R[k] * R[m] * f(k, m);
            }
            A[k][s] = ak;
            B[k][s] = f(k, d);
            t1 += R[k] * f(d, k);
            t2 += R[k] * f(k, d);
          }
          S3[s] = s3;
          T1[s] = t1;
          T2[s] = t2;
          Fnn[s] = f(d, d);
        }
        for (std::size_t h = 0; h < H; ++h) {
          const int hi = static_cast<int>(h);
          auto L = [&](int j, Sign sg, const std::vector<cplx>& v) { return dot(W.row(j, sg, hi), v); };
          const cplx l3_s3 = L(3, Sign::Plus, S3);
          const cplx l4p_t1 = L(4, Sign::Plus, T1);
          const cplx l4m_t2 = L(4, Sign::Minus, T2);
          const cplx l5m_fnn = L(5, Sign::Minus, Fnn);
          const cplx shared = l3_s3 - l4p_t1 - l4m_t2 - l5m_fnn;
          for (int k = 0; k < d; ++k) {
            value[k] = 0.5 * L(1, Sign::Plus, A[k]) - 0.5 * L(2, Sign::Minus, B[k]) + 0.25 * R[k] * shared;
          }
          const cplx l3_t1 = L(3, Sign::Plus, T1);
          const cplx l4p_s3 = L(4, Sign::Plus, S3);
          const cplx l4m_fnn = L(4, Sign::Minus, Fnn);
          const cplx l5m_t2 = L(5, Sign::Minus, T2);
          value[d] = 0.25 * (l3_t1 - l4p_s3 - l4m_fnn - l5m_t2);
          const std::size_t partner = grid.partner(mode);
          for (int c = 0; c < n; ++c) {
            out.value[h](c, mode) = value[c];
            out.value[h](c, partner) = std::conj(value[c]);
          }
          if (!derivatives) continue;
          const cplx d_shared = -kappa * l4p_s3 - kappa * L(5, Sign::Plus, T1) - kappa * L(5, Sign::Minus, T2) -
                                (-2.0 * kappa * L(2, Sign::Minus, Fnn) + kappa * l4m_fnn);
          for (int k = 0; k < d; ++k) {
            const cplx d1 = -kappa * L(2, Sign::Plus, A[k]);
            const cplx d2 = -kappa * L(1, Sign::Minus, B[k]) + 2.0 * at(B[k], hi);
            deriv[k] = 0.5 * d1 - 0.5 * d2 + 0.25 * R[k] * d_shared;
          }
          deriv[d] = 0.25 * (-kappa * l4p_t1 - kappa * L(5, Sign::Plus, S3) - kappa * L(5, Sign::Minus, Fnn) -
                             (-2.0 * kappa * L(2, Sign::Minus, T2) + kappa * l4m_t2));
          for (int c = 0; c < n; ++c) {
            out.derivative[h](c, mode) = deriv[c];
            out.derivative[h](c, partner) = std::conj(deriv[c]);
          }
        }
      }
    }
  }
  trap.rethrow();
  return out;
}

TangentialField whole_space_at_infinity(const HalfSpaceField& F) {
  require_force(F);
  const Grid& grid = F.grid();
  const int d = grid.dim();
  const int n = d + 1;
  TangentialField out(grid, n);
  if (!F.has_tail()) return out;
  const TangentialField& G = F.tail();
  for (std::size_t mode = 0; mode < grid.modes(); ++mode) {
    if (!grid.active(mode)) continue;
    const auto xi = grid.xi(mode);
    const double kappa = grid.kappa(mode);
    auto R = [&](int l) { return I * xi[l] / kappa; };
    auto f = [&](int k, int l) { return G(tensor_index(n, k, l), mode); };
    cplx s3 = 0.0, t1 = 0.0;
    for (int k = 0; k < d; ++k) {
      t1 += R(k) * f(d, k);
      for (int m = 0; m < d; ++m) s3 += R(k) * R(m) * f(k, m);
    }
    // L^(1,+) → 2/κ and L^(3,+) → 4/κ times the tail; the others vanish
    for (int k = 0; k < d; ++k) {
      cplx ak = 0.0;
      for (int m = 0; m < d; ++m) ak += R(m) * f(k, m);
      out(k, mode) = 0.5 * (2.0 / kappa) * ak + 0.25 * R(k) * (4.0 / kappa) * s3;
    }
    out(d, mode) = 0.25 * (4.0 / kappa) * t1;
  }
  return out;
}

HalfSpaceField whole_space_solution(const HalfSpaceField& F) {
  const Grid& grid = F.grid();
  const auto centres = grid.slab_centers();
  HalfSpaceField out = from_samples(grid, whole_space_samples(F, centres, false).value, 0);
  if (F.has_tail()) out.set_tail(whole_space_at_infinity(F));
  return out;
}

TangentialField trace_whole_space(const HalfSpaceField& F) {
  require_force(F);
  const Grid& grid = F.grid();
  const int d = grid.dim();
  const int n = d + 1;
  // scalar source combinations, one component each
  HalfSpaceField A(grid, d, F.has_tail()), B(grid, d, F.has_tail()), S3(grid, 1, F.has_tail()),
      T2(grid, 1, F.has_tail()), T1(grid, 1, F.has_tail()), Fnn(grid, 1, F.has_tail());
  for (int b = 0; b < F.block_count(); ++b) {
    const TangentialField& G = F.block(b);
    for (std::size_t mode = 0; mode < grid.modes(); ++mode) {
      if (!grid.active(mode)) continue;
      const auto xi = grid.xi(mode);
      const double kappa = grid.kappa(mode);
      auto R = [&](int l) { return I * xi[l] / kappa; };
      auto f = [&](int k, int l) { return G(tensor_index(n, k, l), mode); };
      cplx s3 = 0.0, t1 = 0.0, t2 = 0.0;
      for (int k = 0; k < d; ++k) {
        cplx ak = 0.0;
        for (int m = 0; m < d; ++m) {
          ak += R(m) * f(k, m);
          s3 += R(k) * R(m) * f(k, m);
        }
        A.block(b)(k, mode) = ak;
        B.block(b)(k, mode) = f(k, d);
        t1 += R(k) * f(d, k);
        t2 += R(k) * f(k, d);
      }
      S3.block(b)(0, mode) = s3;
      T1.block(b)(0, mode) = t1;
      T2.block(b)(0, mode) = t2;
      Fnn.block(b)(0, mode) = f(d, d);
    }
  }
  // L^(2,-)(0) = -L^(1,+)(0) and L^(4,+)(0) = L^(5,-)(0) = 0
  const TangentialField l1_a = trace_L1plus(A);
  const TangentialField l1_b = trace_L1plus(B);
  const TangentialField l3_s3 = trace_L3plus(S3);
  const TangentialField l4_t2 = trace_L4minus(T2);
  const TangentialField l3_t1 = trace_L3plus(T1);
  const TangentialField l4_fnn = trace_L4minus(Fnn);
  TangentialField out(grid, n);
  for (std::size_t mode = 0; mode < grid.modes(); ++mode) {
    if (!grid.active(mode)) continue;
    const auto xi = grid.xi(mode);
    const double kappa = grid.kappa(mode);
    for (int k = 0; k < d; ++k) {
      const cplx Rk = I * xi[k] / kappa;
      out(k, mode) = 0.5 * l1_a(k, mode) + 0.5 * l1_b(k, mode) + 0.25 * Rk * (l3_s3(0, mode) - l4_t2(0, mode));
    }
    out(d, mode) = 0.25 * (l3_t1(0, mode) - l4_fnn(0, mode));
  }
  return out;
}

HalfSpaceField force_operator(const HalfSpaceField& F) {
  HalfSpaceField out = whole_space_solution(F);
  out -= boundary_operator(trace_whole_space(F));
  return out;
}

HalfSpaceField linear_solve(const TangentialField& a, const HalfSpaceField& F) {
  require_boundary(a);
  HalfSpaceField out = whole_space_solution(F);
  out += boundary_operator(a - trace_whole_space(F));
  return out;
}

LinearSolution linear_solve_detailed(const TangentialField& a, const HalfSpaceField& F) {
  require_boundary(a);
  const Grid& grid = F.grid();
  const auto heights = sample_heights(grid);
  LinearSolution sol{HalfSpaceField(grid, a.components()), {}, whole_space_samples(F, heights, true),
                     trace_whole_space(F)};
  sol.samples = boundary_samples(a - sol.whole_space_trace, heights, true);
  for (std::size_t h = 0; h < heights.size(); ++h) {
    sol.samples.value[h] += sol.whole_space.value[h];
    sol.samples.derivative[h] += sol.whole_space.derivative[h];
  }
  sol.u = from_samples(grid, sol.samples.value, 1);
  if (F.has_tail()) sol.u.set_tail(whole_space_at_infinity(F));
  return sol;
}

double divergence_residual(const HeightSamples& s) {
  if (s.value.empty()) return 0.0;
  const Grid& grid = s.value.front().grid();
  const int d = grid.dim();
  if (s.derivative.size() != s.value.size()) fail(ErrorKind::Usage, "divergence_residual: derivatives required");
  double worst = 0.0, scale = 0.0;
  for (std::size_t h = 0; h < s.value.size(); ++h) {
    const TangentialField& u = s.value[h];
    const TangentialField& du = s.derivative[h];
    for (std::size_t mode = 0; mode < grid.modes(); ++mode) {
      if (!grid.active(mode)) continue;
      const auto xi = grid.xi(mode);
      cplx div = du(d, mode);
      double mag = std::norm(u(d, mode));
      for (int l = 0; l < d; ++l) {
        div += I * xi[l] * u(l, mode);
        mag += std::norm(u(l, mode));
      }
      worst = std::max(worst, std::abs(div));
      scale = std::max(scale, grid.kappa(mode) * std::sqrt(mag));
    }
  }
  return scale > 0.0 ? worst / scale : worst;
}

EvolutionReport evolution_relation_check(const LinearSolution& sol) {
  EvolutionReport rep;
  const auto& U = sol.samples;
  const auto& W = sol.whole_space;
  if (U.value.empty()) return rep;
  const Grid& grid = U.value.front().grid();
  const int d = grid.dim();
  double worst_n = 0.0, worst_t = 0.0;
  for (std::size_t h = 0; h < U.value.size(); ++h) {
    const TangentialField v = U.value[h] - W.value[h];
    const TangentialField dv = U.derivative[h] - W.derivative[h];
    for (std::size_t mode = 0; mode < grid.modes(); ++mode) {
      if (!grid.active(mode)) continue;
      const auto xi = grid.xi(mode);
      const double kappa = grid.kappa(mode);
      cplx xv = 0.0, xdv = 0.0;
      double mag = std::norm(v(d, mode));
      for (int l = 0; l < d; ++l) {
        xv += xi[l] * v(l, mode);
        xdv += xi[l] * dv(l, mode);
        mag += std::norm(v(l, mode));
      }
      // ŵ_n = κ v̂_n - iξ'·v̂'
      const cplx wn = kappa * v(d, mode) - I * xv;
      const cplx dwn = kappa * dv(d, mode) - I * xdv;
      worst_n = std::max(worst_n, std::abs(kappa * wn + dwn));
      for (int l = 0; l < d; ++l) {
        // ŵ_l = v̂_l + (iξ_l/κ) v̂_n
        const cplx wl = v(l, mode) + I * (xi[l] / kappa) * v(d, mode);
        const cplx dwl = dv(l, mode) + I * (xi[l] / kappa) * dv(d, mode);
        worst_t = std::max(worst_t, std::abs(kappa * wl + dwl));
      }
      rep.scale = std::max(rep.scale, kappa * kappa * std::sqrt(mag));
    }
  }
  const double scale = rep.scale > 0.0 ? rep.scale : 1.0;
  rep.normal_residual = worst_n / scale;
  rep.tangential_residual = worst_t / scale;
  return rep;
}

LinearDiagnostics linear_diagnostics(const TangentialField& a, const LinearSolution& sol, double p, double r) {
  LinearDiagnostics diag;
  const int d = a.grid().dim();
  const BesovIndex idx{d / p - 1.0, p, r};
  const double denom = std::max({besov_norm(a, idx), besov_norm(sol.whole_space_trace, idx), 1e-300});
  diag.trace_residual = besov_norm(sol.samples.value.front() - a, idx) / denom;
  if (a.is_zero() && sol.whole_space_trace.is_zero()) diag.trace_residual = 0.0;
  diag.divergence_residual = divergence_residual(sol.samples);
  diag.whole_space_divergence = divergence_residual(sol.whole_space);
  diag.evolution_residual = evolution_relation_check(sol).max_residual();
  return diag;
}

double max_reg_ratio(const TangentialField& a, const HalfSpaceField& F, double q, double q1, double p, double r) {
  if (!(q >= 1.0) || !(q <= q1)) fail(ErrorKind::Usage, "max_reg: exponents must satisfy 1 <= q <= q1 <= inf");
  if (!(p >= 1.0) || !(r >= 1.0)) fail(ErrorKind::Usage, "max_reg: p and r must lie in [1, inf]");
  const int d = a.grid().dim();
  const double rhs = besov_norm(a, {d / p - 1.0, p, r}) +
                     chemin_lerner_norm(F, {q}, {d / p + 1.0 / q - 2.0, p, r});
  if (rhs == 0.0) return 0.0;
  const HalfSpaceField u = linear_solve(a, F);
  const double lhs = chemin_lerner_norm(u, {q1}, {d / p + 1.0 / q1 - 1.0, p, r});
  return lhs / rhs;
}

RatioStats max_reg_check(const Grid& grid, int trials, double q, double q1, double p, double r, std::uint64_t seed) {
  Rng rng(seed);
  const int n = grid.dim() + 1;
  std::vector<double> ratios;
  for (int t = 0; t < trials; ++t) {
    const TangentialField a = random_tangential(grid, n, rng, default_band(grid));
    const HalfSpaceField F = random_halfspace(grid, n * n, rng, default_band(grid));
    ratios.push_back(max_reg_ratio(a, F, q, q1, p, r));
  }
  return summarize_ratios(std::move(ratios));
}

}  // namespace hsns

#include "hsns/kernels.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hsns/error.hpp"
#include "hsns/parallel.hpp"
#include "hsns/spectral_ops.hpp"

namespace hsns {

double kernel_value(int j, double kappa, double z) {
  if (!(kappa > 0.0)) fail(ErrorKind::Usage, "kernel_value: kappa must be positive");
  const double t = std::abs(z);
  const double e = std::exp(-kappa * t);
  const double sgn = z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0);
  switch (j) {
    case 1: return e;
    case 2: return sgn * e;
    case 3: return (1.0 + kappa * t) * e;
    case 4: return kappa * z * e;
    case 5: return (1.0 - kappa * t) * e;
    default: fail(ErrorKind::Usage, "kernel_value: kernel index must be 1..5");
  }
}

TangentialField poisson_apply(double x, const TangentialField& f) {
  if (!(x >= 0.0)) fail(ErrorKind::Usage, "poisson_apply: height must be >= 0");
  if (x == 0.0) return f;
  return apply_multiplier(f, [x](std::span<const double>, double kappa) { return cplx(std::exp(-x * kappa), 0.0); });
}

namespace detail {

namespace {
// 1 - (1+δ)e^{-δ}
double one_minus_poly_exp(double delta) {
  if (delta >= 0.5) return 1.0 - (1.0 + delta) * std::exp(-delta);
  double term = delta;  // δ^k / k!
  double sum = 0.0;
  for (int k = 2; k < 40; ++k) {
    term *= delta / k;
    const double add = (k % 2 ? -1.0 : 1.0) * (k - 1) * term;
    sum += add;
    if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}
}  // namespace

void exp_moments(double kappa, double a, double delta, double& e0, double& e1) {
  const double ea = std::exp(-a);
  if (std::isinf(delta)) {
    e0 = ea / kappa;
    e1 = ea * (1.0 + a) / kappa;
    return;
  }
  const double g = -std::expm1(-delta);
  e0 = ea * g / kappa;
  e1 = ea * (a * g + one_minus_poly_exp(delta)) / kappa;
}

}  // namespace detail

KernelWeights::KernelWeights(const Grid& grid, std::vector<double> heights, bool tail)
    : heights_(std::move(heights)) {
  const int M = grid.slab_count();
  const double h = grid.slab_width();
  sources_ = M + (tail ? 1 : 0);
  for (int m = 0; m < M; ++m) {
    lower_.push_back(m * h);
    upper_.push_back(m == M - 1 ? grid.height() : (m + 1) * h);
  }
  if (tail) {
    lower_.push_back(grid.height());
    upper_.push_back(std::numeric_limits<double>::infinity());
  }
  for (double x : heights_) {
    if (!(x >= 0.0) || std::isinf(x)) fail(ErrorKind::Usage, "kernel weights: heights must be finite and >= 0");
    int src = -1;
    if (x >= grid.height()) {
      src = tail ? M : -1;
    } else {
      src = std::min(M - 1, static_cast<int>(std::floor(x / h)));
    }
    source_at_.push_back(src);
  }
  w_.assign(10 * heights_.size() * sources_, 0.0);
}

void KernelWeights::compute(double kappa) {
  const std::size_t H = heights_.size();
  const std::size_t S = sources_;
  for (std::size_t hi = 0; hi < H; ++hi) {
    const double x = heights_[hi];
    for (std::size_t s = 0; s < S; ++s) {
      const double y0 = lower_[s];
      const double y1 = upper_[s];
      double minus[5] = {0, 0, 0, 0, 0};
      double plus[5] = {0, 0, 0, 0, 0};
      auto piece = [kappa](double t0, double t1, double sigma, double* acc) {
        double e0, e1;
        const double delta = std::isinf(t1) ? t1 : kappa * (t1 - t0);
        if (delta == 0.0) return;
        detail::exp_moments(kappa, kappa * t0, delta, e0, e1);
        acc[0] += e0;
        acc[1] += sigma * e0;
        acc[2] += e0 + e1;
        acc[3] += sigma * e1;
        acc[4] += e0 - e1;
      };
      if (y1 <= x) {
        piece(x - y1, x - y0, 1.0, minus);
      } else if (y0 >= x) {
        piece(y0 - x, y1 - x, -1.0, minus);
      } else {
        piece(0.0, x - y0, 1.0, minus);
        piece(0.0, y1 - x, -1.0, minus);
      }
      piece(x + y0, x + y1, 1.0, plus);
      for (int j = 0; j < 5; ++j) {
        const double vp = minus[j] + plus[j];
        const double vm = minus[j] - plus[j];
        if (!std::isfinite(vp) || !std::isfinite(vm)) {
          std::ostringstream os;
          os << "kernel weights: non-finite accumulation at kappa=" << kappa << ", height=" << x;
          fail(ErrorKind::NumericGate, os.str());
        }
        w_[((static_cast<std::size_t>(j) * 2 + 0) * H + hi) * S + s] = vp;
        w_[((static_cast<std::size_t>(j) * 2 + 1) * H + hi) * S + s] = vm;
      }
    }
  }
}

void gather_sources(const HalfSpaceField& G, int component, std::size_t mode, std::span<cplx> out) {
  for (int b = 0; b < G.block_count(); ++b) out[b] = G.block(b)(component, mode);
}

std::vector<TangentialField> L_operator(int j, Sign sign, const HalfSpaceField& G, std::span<const double> heights) {
  if (j < 1 || j > 5) fail(ErrorKind::Usage, "L_operator: kernel index must be 1..5");
  const Grid& grid = G.grid();
  const int C = G.components();
  std::vector<TangentialField> out(heights.size(), TangentialField(grid, C));
  const auto& groups = grid.table().canonical_groups;
  const std::vector<double> hs(heights.begin(), heights.end());
  ExceptionTrap trap;
#pragma omp parallel
  {
    KernelWeights weights(grid, hs, G.has_tail());
    std::vector<cplx> src(weights.source_count());
#pragma omp for schedule(dynamic)
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (!trap.run([&] { weights.compute(groups[g].kappa); })) continue;
      for (std::size_t mode : groups[g].modes) {
        const std::size_t partner = grid.partner(mode);
        for (int c = 0; c < C; ++c) {
          gather_sources(G, c, mode, src);
          for (std::size_t h = 0; h < hs.size(); ++h) {
            const double* w = weights.row(j, sign, static_cast<int>(h));
            cplx acc = 0.0;
            for (int s = 0; s < weights.source_count(); ++s) acc += w[s] * src[s];
            out[h](c, mode) = acc;
            if (partner != mode) out[h](c, partner) = std::conj(acc);
          }
        }
      }
    }
  }
  trap.rethrow();
  return out;
}

TangentialField L_operator(int j, Sign sign, const HalfSpaceField& G, double x) {
  const double hs[1] = {x};
  return std::move(L_operator(j, sign, G, hs)[0]);
}

TangentialField L_operator_at_infinity(int j, Sign, const HalfSpaceField& G) {
  if (j < 1 || j > 5) fail(ErrorKind::Usage, "L_operator: kernel index must be 1..5");
  TangentialField out(G.grid(), G.components());
  if (!G.has_tail() || j == 2 || j == 4 || j == 5) return out;
  const double mass = j == 1 ? 2.0 : 4.0;
  return apply_multiplier(G.tail(), [mass](std::span<const double>, double kappa) { return cplx(mass / kappa, 0.0); });
}

namespace {

template <class Weight>
TangentialField boundary_integral(const HalfSpaceField& G, Weight&& weight) {
  const Grid& grid = G.grid();
  const int M = grid.slab_count();
  const double h = grid.slab_width();
  TangentialField out(grid, G.components());
  std::vector<double> w(G.block_count());
  for (const auto& group : grid.table().canonical_groups) {
    const double kappa = group.kappa;
    for (int b = 0; b < G.block_count(); ++b) {
      double e0, e1;
      const double y0 = b * h;
      const double delta = b == M ? std::numeric_limits<double>::infinity()
                                  : kappa * ((b == M - 1 ? grid.height() : (b + 1) * h) - y0);
      detail::exp_moments(kappa, kappa * (b == M ? grid.height() : y0), delta, e0, e1);
      w[b] = weight(e0, e1);
    }
    for (std::size_t mode : group.modes) {
      for (int c = 0; c < G.components(); ++c) {
        cplx acc = 0.0;
        for (int b = 0; b < G.block_count(); ++b) acc += w[b] * G.block(b)(c, mode);
        out(c, mode) = acc;
        out(c, grid.partner(mode)) = std::conj(acc);
      }
    }
  }
  return out;
}

}  // namespace

TangentialField trace_L1plus(const HalfSpaceField& G) {
  return boundary_integral(G, [](double e0, double) { return 2.0 * e0; });
}

TangentialField trace_L3plus(const HalfSpaceField& G) {
  return boundary_integral(G, [](double e0, double e1) { return 2.0 * (e0 + e1); });
}

TangentialField trace_L4minus(const HalfSpaceField& G) {
  return boundary_integral(G, [](double, double e1) { return -2.0 * e1; });
}

}  // namespace hsns

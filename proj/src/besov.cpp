#include "hsns/besov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hsns/error.hpp"
#include "hsns/random_fields.hpp"
#include "hsns/spectral_ops.hpp"

namespace hsns {

BlockWeights::BlockWeights(const Grid& grid)
    : range_(DyadicRange::for_grid(grid)), modes_(grid.modes()) {
  w_.assign(static_cast<std::size_t>(range_.size()) * modes_, 0.0);
  for (int j = range_.j_min; j <= range_.j_max; ++j) {
    double* row = w_.data() + static_cast<std::size_t>(j - range_.j_min) * modes_;
    for (std::size_t m = 0; m < modes_; ++m) {
      if (grid.active(m)) row[m] = phi_hat(j, grid.kappa(m));
    }
  }
}

std::span<const double> BlockWeights::weights(int j) const {
  return {w_.data() + static_cast<std::size_t>(j - range_.j_min) * modes_, modes_};
}

double lr_norm(std::span<const double> terms, double r) {
  if (std::isinf(r)) {
    double worst = 0.0;
    for (double t : terms) worst = std::max(worst, t);
    return worst;
  }
  double acc = 0.0;
  for (double t : terms) {
    if (std::isinf(t)) return kInfinity;
    if (t > 0.0) acc += std::pow(t, r);
  }
  return std::pow(acc, 1.0 / r);
}

namespace {

double physical_lp(const std::vector<double>& values, const Grid& grid, int components, double p) {
  const std::size_t n = grid.modes();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int c = 0; c < components; ++c) s += values[c * n + i] * values[c * n + i];
    const double mag = std::sqrt(s);
    if (std::isinf(p)) acc = std::max(acc, mag);
    else if (p == 1.0) acc += mag;
    else acc += std::pow(mag, p);
  }
  if (std::isinf(p)) return acc;
  acc *= grid.cell_volume();
  return p == 1.0 ? acc : std::pow(acc, 1.0 / p);
}

double parseval_l2(const TangentialField& f, std::span<const double> weight) {
  double acc = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    auto comp = f.component(c);
    for (std::size_t m = 0; m < comp.size(); ++m) {
      const double w = weight.empty() ? 1.0 : weight[m];
      if (w != 0.0) acc += w * w * std::norm(comp[m]);
    }
  }
  return std::sqrt(f.grid().torus_volume() * acc);
}

void validate_exponent(double v, const char* name) {
  if (!(v >= 1.0)) {
    std::ostringstream os;
    os << "exponent " << name << " must lie in [1, inf], got " << v;
    fail(ErrorKind::Usage, os.str());
  }
}

}  // namespace

double lp_norm(const TangentialField& f, double p) {
  validate_exponent(p, "p");
  if (p == 2.0) return parseval_l2(f, {});
  return physical_lp(f.to_physical(), f.grid(), f.components(), p);
}

std::vector<double> block_lp_norms(const TangentialField& f, double p) {
  return block_lp_norms(f, p, BlockWeights(f.grid()));
}

std::vector<double> block_lp_norms(const TangentialField& f, double p, const BlockWeights& blocks) {
  validate_exponent(p, "p");
  const auto& range = blocks.range();
  std::vector<double> out(range.size(), 0.0);
  for (int j = range.j_min; j <= range.j_max; ++j) {
    auto w = blocks.weights(j);
    if (p == 2.0) {
      out[j - range.j_min] = parseval_l2(f, w);
      continue;
    }
    TangentialField block(f.grid(), f.components());
    bool any = false;
    for (int c = 0; c < f.components(); ++c) {
      auto src = f.component(c);
      auto dst = block.component(c);
      for (std::size_t m = 0; m < src.size(); ++m) {
        dst[m] = w[m] * src[m];
        any = any || dst[m] != cplx(0.0, 0.0);
      }
    }
    out[j - range.j_min] = any ? physical_lp(block.to_physical(), f.grid(), f.components(), p) : 0.0;
  }
  return out;
}

double besov_norm(const TangentialField& f, const BesovIndex& idx) {
  validate_exponent(idx.r, "r");
  const auto range = DyadicRange::for_grid(f.grid());
  auto terms = block_lp_norms(f, idx.p);
  for (int j = range.j_min; j <= range.j_max; ++j) terms[j - range.j_min] *= std::exp2(idx.s * j);
  return lr_norm(terms, idx.r);
}

double chemin_lerner_norm(const HalfSpaceField& u, const CLIndex& cl, const BesovIndex& idx) {
  validate_exponent(cl.q, "q");
  validate_exponent(idx.r, "r");
  if (!(cl.a < cl.b) || cl.a < 0.0) fail(ErrorKind::Usage, "chemin_lerner_norm: interval must satisfy 0 <= a < b");
  const Grid& grid = u.grid();
  const BlockWeights blocks(grid);
  const auto& range = blocks.range();
  const double h = grid.slab_width();

  // vertical measure of each block inside (a, b)
  std::vector<double> overlap(u.block_count(), 0.0);
  for (int m = 0; m < grid.slab_count(); ++m) {
    const double lo = std::max(cl.a, m * h);
    const double hi = std::min(cl.b, m == grid.slab_count() - 1 ? grid.height() : (m + 1) * h);
    overlap[m] = std::max(0.0, hi - lo);
  }
  if (u.has_tail()) {
    overlap.back() = std::isinf(cl.b) ? kInfinity : std::max(0.0, cl.b - std::max(cl.a, grid.height()));
  }

  std::vector<double> vertical(range.size(), 0.0);
  for (int b = 0; b < u.block_count(); ++b) {
    if (overlap[b] <= 0.0) continue;
    const auto norms = block_lp_norms(u.block(b), idx.p, blocks);
    for (int i = 0; i < range.size(); ++i) {
      const double v = norms[i];
      if (v == 0.0) continue;
      if (std::isinf(cl.q)) vertical[i] = std::max(vertical[i], v);
      else if (std::isinf(overlap[b])) vertical[i] = kInfinity;
      else vertical[i] += overlap[b] * std::pow(v, cl.q);
    }
  }
  for (int j = range.j_min; j <= range.j_max; ++j) {
    double& v = vertical[j - range.j_min];
    if (!std::isinf(cl.q) && !std::isinf(v)) v = std::pow(v, 1.0 / cl.q);
    if (v > 0.0 && !std::isinf(v)) v *= std::exp2(idx.s * j);
  }
  return lr_norm(vertical, idx.r);
}

BonyParts bony_decompose(const TangentialField& f, const TangentialField& g) {
  if (f.components() != 1 || g.components() != 1) fail(ErrorKind::Usage, "bony_decompose: scalar fields required");
  if (!f.grid().same_tangential(g.grid())) fail(ErrorKind::Data, "bony_decompose: grid mismatch");
  const Grid& grid = f.grid();
  const BlockWeights blocks(grid);
  const auto& range = blocks.range();
  const int J = range.size();

  auto block_physical = [&](const TangentialField& src, int j) {
    TangentialField b(grid, 1);
    auto w = blocks.weights(j);
    for (std::size_t m = 0; m < grid.modes(); ++m) b(0, m) = w[m] * src(0, m);
    return padded_physical(b, 0);
  };
  std::vector<std::vector<double>> fb(J), gb(J);
  for (int i = 0; i < J; ++i) {
    fb[i] = block_physical(f, range.j_min + i);
    gb[i] = block_physical(g, range.j_min + i);
  }
  const std::size_t P = fb.empty() ? 0 : fb[0].size();
  std::vector<double> lh(P, 0.0), res(P, 0.0), hl(P, 0.0);
  std::vector<double> low_f(P, 0.0), low_g(P, 0.0);
  for (int k = 0; k < J; ++k) {
    // low_f, low_g hold the partial sums over blocks l <= k-3
    if (k - 3 >= 0) {
      for (std::size_t i = 0; i < P; ++i) {
        low_f[i] += fb[k - 3][i];
        low_g[i] += gb[k - 3][i];
      }
    }
    for (std::size_t i = 0; i < P; ++i) {
      lh[i] += low_f[i] * gb[k][i];
      hl[i] += low_g[i] * fb[k][i];
    }
    for (int l = std::max(0, k - 2); l <= std::min(J - 1, k + 2); ++l) {
      for (std::size_t i = 0; i < P; ++i) res[i] += fb[k][i] * gb[l][i];
    }
  }
  BonyParts parts{TangentialField(grid, 1), TangentialField(grid, 1), TangentialField(grid, 1)};
  if (P == 0) return parts;
  accumulate_padded(std::move(lh), parts.low_high, 0);
  accumulate_padded(std::move(res), parts.resonant, 0);
  accumulate_padded(std::move(hl), parts.high_low, 0);
  return parts;
}

HalfSpaceField pointwise_product(const HalfSpaceField& f, const HalfSpaceField& g) {
  if (f.components() != 1 || g.components() != 1) fail(ErrorKind::Usage, "pointwise_product: scalar fields required");
  if (!(f.grid() == g.grid())) fail(ErrorKind::Data, "pointwise_product: grid mismatch");
  const bool tail = f.has_tail() && g.has_tail();
  HalfSpaceField out(f.grid(), 1, tail);
  for (int m = 0; m < f.slab_count(); ++m) out.slab(m) = product(f.slab(m), g.slab(m));
  if (tail) out.tail() = product(f.tail(), g.tail());
  return out;
}

double q_star(double q) { return std::max(2.0, q); }

double holder_conjugate(double q) {
  if (std::isinf(q)) return 1.0;
  if (q == 1.0) return kInfinity;
  return q / (q - 1.0);
}

std::string format_exponent(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_solver_exponents(int n, double p, double q, double r) {
  if (n < 3) fail(ErrorKind::Usage, "exponents: dimension n must be >= 3");
  for (auto [v, name] : {std::pair{p, "p"}, std::pair{q, "q"}, std::pair{r, "r"}}) {
    if (!(v >= 1.0)) fail(ErrorKind::Usage, std::string("exponents: ") + name + " must lie in [1, inf]");
  }
  if (n == 3 && std::isinf(q)) fail(ErrorKind::Usage, "exponents: q < inf is required when n = 3");
  const double bound = holder_conjugate(q_star(q)) * (n - 1);
  if (!(p < bound)) {
    std::ostringstream os;
    os << "exponents: p < q*'(n-1) = " << bound << " violated (p=" << format_exponent(p)
       << ", q=" << format_exponent(q) << ", n=" << n << ")";
    fail(ErrorKind::Usage, os.str());
  }
}

int bilinear_regime(double p, double q) {
  if (p < 2.0) return 3;
  if (q < 2.0) return 2;
  return 1;
}

double bilinear_ratio(const HalfSpaceField& f, const HalfSpaceField& g, double p, double q, double r) {
  const int d = f.grid().dim();
  const double qs = q_star(q);
  const BesovIndex x_idx{d / p + 1.0 / qs - 1.0, p, r};
  const BesovIndex y_idx{d / p + 2.0 / qs - 2.0, p, r};
  const double nf = chemin_lerner_norm(f, {qs}, x_idx);
  const double ng = chemin_lerner_norm(g, {qs}, x_idx);
  if (nf == 0.0 || ng == 0.0) return 0.0;
  const double nfg = chemin_lerner_norm(pointwise_product(f, g), {qs / 2.0}, y_idx);
  return nfg / (nf * ng);
}

RatioStats summarize_ratios(std::vector<double> ratios) {
  RatioStats stats;
  for (double v : ratios) {
    if (v == 0.0) ++stats.skipped;
    else stats.ratios.push_back(v);
  }
  if (stats.ratios.empty()) return stats;
  std::vector<double> sorted = stats.ratios;
  std::sort(sorted.begin(), sorted.end());
  stats.max = sorted.back();
  const std::size_t n = sorted.size();
  stats.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return stats;
}

RatioStats bilinear_estimate_check(const Grid& grid, int trials, double p, double q, double r, std::uint64_t seed) {
  check_solver_exponents(grid.dim() + 1, p, q, r);
  Rng rng(seed);
  std::vector<double> ratios;
  ratios.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    const int band = 1 + static_cast<int>(rng() % default_band(grid));
    const HalfSpaceField f = random_halfspace(grid, 1, rng, band);
    const HalfSpaceField g = random_halfspace(grid, 1, rng, default_band(grid));
    ratios.push_back(bilinear_ratio(f, g, p, q, r));
  }
  return summarize_ratios(std::move(ratios));
}

TangentialField dyadic_rescale(const TangentialField& f, int power, double weight) {
  const Grid companion = f.grid().dyadic_companion(power);
  TangentialField out(companion, f.components());
  const double factor = std::exp2(power * weight);
  for (std::size_t i = 0; i < f.data().size(); ++i) out.data()[i] = factor * f.data()[i];
  return out;
}

HalfSpaceField dyadic_rescale(const HalfSpaceField& f, int power, double weight) {
  const Grid companion = f.grid().dyadic_companion(power);
  HalfSpaceField out(companion, f.components(), f.has_tail());
  for (int b = 0; b < f.block_count(); ++b) out.block(b) = dyadic_rescale(f.block(b), power, weight);
  return out;
}

}  // namespace hsns

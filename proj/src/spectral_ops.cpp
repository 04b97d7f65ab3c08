#include "hsns/spectral_ops.hpp"

#include <cmath>

#include "hsns/fft.hpp"

namespace hsns {

double chi(double rho) {
  if (rho <= 1.0) return 1.0;
  if (rho >= 2.0) return 0.0;
  const double t = rho - 1.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

double phi_hat(int j, double kappa) {
  return chi(std::ldexp(kappa, -j)) - chi(std::ldexp(kappa, 1 - j));
}

TangentialField riesz_transform(int l, const TangentialField& f) {
  const int d = f.grid().dim();
  if (l < 1 || l > d) fail(ErrorKind::Usage, "riesz_transform: axis index must lie in 1..d");
  return apply_multiplier(f, [l](std::span<const double> xi, double kappa) { return cplx(0.0, xi[l - 1] / kappa); });
}

TangentialField lp_block(int j, const TangentialField& f) {
  if (!DyadicRange::for_grid(f.grid()).contains(j)) return TangentialField(f.grid(), f.components());
  return apply_multiplier(f, [j](std::span<const double>, double kappa) { return cplx(phi_hat(j, kappa), 0.0); });
}

TangentialField tangential_grad(const TangentialField& f) {
  if (f.components() != 1) fail(ErrorKind::Usage, "tangential_grad: scalar field required");
  const Grid& grid = f.grid();
  TangentialField out(grid, grid.dim());
  for (std::size_t m = 0; m < grid.modes(); ++m) {
    if (!grid.active(m)) continue;
    auto xi = grid.xi(m);
    for (int l = 0; l < grid.dim(); ++l) out(l, m) = cplx(0.0, xi[l]) * f(0, m);
  }
  return out;
}

TangentialField tangential_div(const TangentialField& v) {
  const Grid& grid = v.grid();
  if (v.components() != grid.dim()) fail(ErrorKind::Usage, "tangential_div: d-component field required");
  TangentialField out(grid, 1);
  for (std::size_t m = 0; m < grid.modes(); ++m) {
    if (!grid.active(m)) continue;
    auto xi = grid.xi(m);
    cplx acc = 0.0;
    for (int l = 0; l < grid.dim(); ++l) acc += cplx(0.0, xi[l]) * v(l, m);
    out(0, m) = acc;
  }
  return out;
}

TangentialField leray_project(const TangentialField& v) {
  const Grid& grid = v.grid();
  const int d = grid.dim();
  if (v.components() != d) fail(ErrorKind::Usage, "leray_project: d-component field required");
  TangentialField out(grid, d);
  for (std::size_t m = 0; m < grid.modes(); ++m) {
    if (!grid.active(m)) continue;
    auto xi = grid.xi(m);
    const double k2 = grid.kappa(m) * grid.kappa(m);
    cplx dot = 0.0;
    for (int l = 0; l < d; ++l) dot += xi[l] * v(l, m);
    for (int k = 0; k < d; ++k) out(k, m) = v(k, m) - xi[k] * dot / k2;
  }
  return out;
}

TangentialField inverse_laplacian(const TangentialField& f) {
  return apply_multiplier(f, [](std::span<const double>, double kappa) { return cplx(1.0 / (kappa * kappa), 0.0); });
}

namespace {

int padded_size(const Grid& grid) { return 3 * grid.points() / 2; }

std::size_t padded_index(const Grid& grid, std::size_t mode) {
  const int pn = padded_size(grid);
  std::size_t idx = 0;
  for (int k : grid.multi_index(mode)) {
    idx = idx * pn + static_cast<std::size_t>(k < 0 ? k + pn : k);
  }
  return idx;
}

std::vector<std::size_t> padded_map(const Grid& grid) {
  std::vector<std::size_t> map(grid.modes());
  for (std::size_t m = 0; m < grid.modes(); ++m) map[m] = padded_index(grid, m);
  return map;
}

std::size_t padded_total(const Grid& grid) {
  std::size_t total = 1;
  for (int a = 0; a < grid.dim(); ++a) total *= static_cast<std::size_t>(padded_size(grid));
  return total;
}

}  // namespace

std::vector<double> padded_physical(const TangentialField& f, int component) {
  const Grid& grid = f.grid();
  const auto map = padded_map(grid);
  std::vector<cplx> work(padded_total(grid), cplx(0.0, 0.0));
  auto comp = f.component(component);
  for (std::size_t m = 0; m < grid.modes(); ++m) {
    if (grid.active(m)) work[map[m]] = comp[m];
  }
  fft::transform(grid.dim(), padded_size(grid), +1, work);
  std::vector<double> out(work.size());
  for (std::size_t i = 0; i < work.size(); ++i) out[i] = work[i].real();
  return out;
}

void accumulate_padded(std::vector<double> values, TangentialField& out, int component, double scale) {
  const Grid& grid = out.grid();
  const std::size_t total = padded_total(grid);
  if (values.size() != total) fail(ErrorKind::Data, "accumulate_padded: wrong padded length");
  std::vector<cplx> work(total);
  for (std::size_t i = 0; i < total; ++i) work[i] = cplx(values[i], 0.0);
  fft::transform(grid.dim(), padded_size(grid), -1, work);
  const auto map = padded_map(grid);
  const double norm = scale / static_cast<double>(total);
  auto comp = out.component(component);
  for (std::size_t m = 0; m < grid.modes(); ++m) {
    if (!grid.active(m)) continue;
    const std::size_t p = map[m];
    const std::size_t q = map[grid.partner(m)];
    // average with the conjugate partner so the output is exactly Hermitian
    comp[m] += norm * 0.5 * (work[p] + std::conj(work[q]));
  }
}

TangentialField product(const TangentialField& f, const TangentialField& g) {
  if (f.components() != 1 || g.components() != 1) fail(ErrorKind::Usage, "product: scalar fields required");
  if (!f.grid().same_tangential(g.grid())) fail(ErrorKind::Data, "product: grid mismatch");
  auto pf = padded_physical(f, 0);
  const auto pg = padded_physical(g, 0);
  for (std::size_t i = 0; i < pf.size(); ++i) pf[i] *= pg[i];
  TangentialField out(f.grid(), 1);
  accumulate_padded(std::move(pf), out, 0);
  return out;
}

}  // namespace hsns

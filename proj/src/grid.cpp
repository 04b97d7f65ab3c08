#include "hsns/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "hsns/error.hpp"

namespace hsns {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int signed_index(int i, int n) { return i < n / 2 ? i : i - n; }

std::shared_ptr<const ModeTable> build_table(int d, int n, double period) {
  auto table = std::make_shared<ModeTable>();
  std::size_t modes = 1;
  for (int a = 0; a < d; ++a) modes *= static_cast<std::size_t>(n);
  table->xi.resize(modes * d);
  table->kappa.resize(modes);
  table->index_norm2.resize(modes);
  table->partner.resize(modes);
  table->active.resize(modes);

  const double dk = 2.0 * std::numbers::pi / period;
  std::vector<int> k(d);
  for (std::size_t m = 0; m < modes; ++m) {
    std::size_t rem = m;
    for (int a = d - 1; a >= 0; --a) {
      k[a] = signed_index(static_cast<int>(rem % n), n);
      rem /= n;
    }
    int norm2 = 0;
    bool nyquist = false;
    std::size_t partner = 0;
    for (int a = 0; a < d; ++a) {
      table->xi[m * d + a] = dk * k[a];
      norm2 += k[a] * k[a];
      nyquist = nyquist || k[a] == -n / 2;
      const int neg = -k[a];
      const int wrapped = neg < 0 ? neg + n : (neg >= n ? neg - n : neg);
      partner = partner * n + static_cast<std::size_t>(wrapped);
    }
    table->index_norm2[m] = norm2;
    table->kappa[m] = dk * std::sqrt(static_cast<double>(norm2));
    table->partner[m] = partner;
    table->active[m] = (norm2 != 0 && !nyquist) ? 1 : 0;
  }

  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t m = 0; m < modes; ++m) {
    if (table->active[m] && m <= table->partner[m]) groups[table->index_norm2[m]].push_back(m);
  }
  for (auto& [norm2, members] : groups) {
    table->canonical_groups.push_back({dk * std::sqrt(static_cast<double>(norm2)), std::move(members)});
  }
  return table;
}

}  // namespace

Grid::Grid(int d, int n_points, double period, int slabs, double height)
    : d_(d), n_(n_points), period_(period), slabs_(slabs), height_(height), modes_(1) {
  if (d != 2 && d != 3) fail(ErrorKind::Usage, "grid: tangential dimension must be 2 or 3");
  if (!is_power_of_two(n_points) || n_points < 4) fail(ErrorKind::Usage, "grid: N must be a power of two >= 4");
  if (!(period > 0.0) || !std::isfinite(period)) fail(ErrorKind::Usage, "grid: period L must be positive");
  if (slabs < 1) fail(ErrorKind::Usage, "grid: slab count M must be >= 1");
  if (!(height > 0.0) || !std::isfinite(height)) fail(ErrorKind::Usage, "grid: X_max must be positive");
  for (int a = 0; a < d; ++a) modes_ *= static_cast<std::size_t>(n_points);
  table_ = build_table(d, n_points, period);
}

std::vector<double> Grid::slab_centers() const {
  std::vector<double> c(slabs_);
  for (int m = 0; m < slabs_; ++m) c[m] = slab_center(m);
  return c;
}

double Grid::cell_volume() const { return std::pow(period_ / n_, d_); }

double Grid::torus_volume() const { return std::pow(period_, d_); }

double Grid::kappa_min() const { return 2.0 * std::numbers::pi / period_; }

double Grid::kappa_max() const { return std::numbers::pi * n_ * std::sqrt(static_cast<double>(d_)) / period_; }

std::size_t Grid::mode_index(std::span<const int> k) const {
  std::size_t idx = 0;
  for (int a = 0; a < d_; ++a) {
    int v = k[a];
    if (v < -n_ / 2 || v >= n_ / 2) {
      std::ostringstream os;
      os << "grid: wavenumber " << v << " outside [-N/2, N/2)";
      fail(ErrorKind::Usage, os.str());
    }
    if (v < 0) v += n_;
    idx = idx * n_ + static_cast<std::size_t>(v);
  }
  return idx;
}

std::vector<int> Grid::multi_index(std::size_t mode) const {
  std::vector<int> k(d_);
  for (int a = d_ - 1; a >= 0; --a) {
    k[a] = signed_index(static_cast<int>(mode % n_), n_);
    mode /= n_;
  }
  return k;
}

Grid Grid::dyadic_companion(int power) const {
  return Grid(d_, n_, std::ldexp(period_, -power), slabs_, std::ldexp(height_, -power));
}

bool Grid::same_tangential(const Grid& other) const {
  return d_ == other.d_ && n_ == other.n_ && period_ == other.period_;
}

bool Grid::operator==(const Grid& other) const {
  return same_tangential(other) && slabs_ == other.slabs_ && height_ == other.height_;
}

DyadicRange DyadicRange::for_grid(const Grid& grid) {
  const double kmin = grid.kappa_min();
  const double kmax = grid.kappa_max();
  DyadicRange r{};
  r.j_min = std::ilogb(kmin);
  r.j_max = std::ilogb(kmax);
  if (std::ldexp(1.0, r.j_max) < kmax) ++r.j_max;
  return r;
}

}  // namespace hsns

#include "hsns/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace hsns {

int default_band(const Grid& grid) { return std::max(1, grid.points() / 4); }

TangentialField random_tangential(const Grid& grid, int components, Rng& rng, int kmax) {
  std::normal_distribution<double> normal(0.0, 1.0);
  TangentialField f(grid, components);
  for (int c = 0; c < components; ++c) {
    for (std::size_t m = 0; m < grid.modes(); ++m) {
      if (!grid.active(m) || grid.partner(m) < m) continue;
      const auto k = grid.multi_index(m);
      int kinf = 0;
      double k2 = 0.0;
      for (int v : k) {
        kinf = std::max(kinf, std::abs(v));
        k2 += static_cast<double>(v) * v;
      }
      const double re = normal(rng);
      const double im = normal(rng);
      if (kinf > kmax) continue;
      const double damp = 1.0 / (1.0 + k2 / kmax);
      f(c, m) = damp * cplx(re, im);
      f(c, grid.partner(m)) = std::conj(f(c, m));
    }
  }
  f.enforce_invariants();
  const double peak = f.max_abs();
  if (peak > 0.0) f *= 1.0 / peak;
  return f;
}

HalfSpaceField random_halfspace(const Grid& grid, int components, Rng& rng, int kmax, bool tail) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  HalfSpaceField out(grid, components, tail);
  const double X = grid.height();
  TangentialField profile(grid, components);
  if (tail) profile = random_tangential(grid, components, rng, kmax);
  for (int term = 0; term < 3; ++term) {
    const TangentialField f = random_tangential(grid, components, rng, kmax);
    const double centre = 0.5 * X * unit(rng);
    const double width = X * (0.0625 + 0.1875 * unit(rng));
    for (int m = 0; m < grid.slab_count(); ++m) {
      const double z = (grid.slab_center(m) - centre) / width;
      out.slab(m).axpy(std::exp(-z * z), f);
    }
  }
  if (tail) {
    for (int m = 0; m < grid.slab_count(); ++m) {
      const double s = grid.slab_center(m) / X;
      out.slab(m).axpy(s * s, profile);
    }
    out.set_tail(profile);
  }
  return out;
}

}  // namespace hsns

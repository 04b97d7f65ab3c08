#pragma once

#include <cmath>
#include <numbers>

#include "hsns/grid.hpp"
#include "hsns/halfspace_field.hpp"
#include "hsns/random_fields.hpp"

namespace testing_support {

inline hsns::Grid small_grid(int d = 2, int n = 16, int slabs = 16) {
  return hsns::Grid(d, n, 16.0 * std::numbers::pi, slabs, 8.0);
}

inline hsns::TangentialField single_mode(const hsns::Grid& grid, std::vector<int> k, int components = 1,
                                         int component = 0) {
  hsns::TangentialField f(grid, components);
  const std::size_t m = grid.mode_index(k);
  f(component, m) = 0.5;
  f(component, grid.partner(m)) = 0.5;
  return f;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing_support

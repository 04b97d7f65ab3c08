#pragma once

#include <cstdint>
#include <random>

#include "hsns/halfspace_field.hpp"

namespace hsns {

using Rng = std::mt19937_64;

/// Hermitian random coefficients on modes with max|k_a| <= kmax, Gaussian
/// entries damped by 1/(1+|k|^2/kmax). Scaled to unit maximum coefficient.
TangentialField random_tangential(const Grid& grid, int components, Rng& rng, int kmax);

/// Sum of three random tangential fields, each times a Gaussian profile in
/// x_n centred in [0, X_max/2]. With tail = true the tail is set to an
/// independent random profile and the slabs blend into it.
HalfSpaceField random_halfspace(const Grid& grid, int components, Rng& rng, int kmax, bool tail = false);

/// Default band limit for random data on a grid.
int default_band(const Grid& grid);

}  // namespace hsns

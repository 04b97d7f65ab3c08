#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "hsns/error.hpp"
#include "hsns/tangential_field.hpp"

namespace hsns {

/// Smooth cutoff: 1 on [0,1], 0 on [2,∞), exp(1 - 1/(1-(ρ-1)^2)) in between.
double chi(double rho);
/// Littlewood–Paley symbol χ(2^{-j}κ) - χ(2^{1-j}κ).
double phi_hat(int j, double kappa);

/// Applies m(ξ', |ξ'|) to every component. The symbol must be finite at every
/// active frequency; inactive modes stay zero.
template <class Symbol>
TangentialField apply_multiplier(const TangentialField& f, Symbol&& m) {
  const Grid& grid = f.grid();
  TangentialField out(grid, f.components());
  for (std::size_t mode = 0; mode < grid.modes(); ++mode) {
    if (!grid.active(mode)) continue;
    const cplx value = m(grid.xi(mode), grid.kappa(mode));
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      std::ostringstream os;
      os << "multiplier: non-finite symbol at mode " << mode << " (kappa=" << grid.kappa(mode) << ")";
      fail(ErrorKind::Data, os.str());
    }
    for (int c = 0; c < f.components(); ++c) out(c, mode) = value * f(c, mode);
  }
  return out;
}

/// Multiplier iξ'_l/|ξ'| with l in 1..d.
TangentialField riesz_transform(int l, const TangentialField& f);
/// Δ_j f; zero outside the grid's dyadic range.
TangentialField lp_block(int j, const TangentialField& f);
TangentialField tangential_grad(const TangentialField& f);
TangentialField tangential_div(const TangentialField& v);
/// (δ_kl - ξ_k ξ_l / |ξ'|^2) applied to a d-component field.
TangentialField leray_project(const TangentialField& v);
/// Multiplier 1/|ξ'|^2.
TangentialField inverse_laplacian(const TangentialField& f);

/// Physical values of one component on the 3N/2 padded grid.
std::vector<double> padded_physical(const TangentialField& f, int component);
/// Transforms padded physical values back, truncates to the base grid and
/// adds scale times the result into out(component, ·).
void accumulate_padded(std::vector<double> values, TangentialField& out, int component, double scale = 1.0);
/// Dealiased pointwise product of two scalar fields.
TangentialField product(const TangentialField& f, const TangentialField& g);

}  // namespace hsns

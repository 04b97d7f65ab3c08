#include "hsns/inverse_ft.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/multiprecision/float128.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hsns/error.hpp"

namespace hsns {

namespace {

using Quad = boost::multiprecision::float128;

struct Integrators {
  boost::math::quadrature::ooura_fourier_cos<Quad> cos_rule{Quad(1e-22), 8};
  boost::math::quadrature::exp_sinh<Quad> half_line;
};

Integrators& integrators() {
  thread_local Integrators instance;
  return instance;
}

double sgn(double z) { return z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0); }

/// Size of the transform near z, used where the closed form vanishes.
double envelope(int j, double kappa, double z) {
  return std::exp(-kappa * std::abs(z)) / (4.0 * kappa) * (j == 3 ? 1.0 / (kappa * kappa) : 1.0);
}

}  // namespace

double inverse_ft_closed_form(int j, double kappa, double z) {
  if (!(kappa > 0.0)) fail(ErrorKind::Usage, "inverse_ft: kappa must be positive");
  const double t = std::abs(z);
  const double e = std::exp(-kappa * t);
  switch (j) {
    case 1: return e / (2.0 * kappa);
    case 2: return -0.5 * sgn(z) * e;
    case 3: return (1.0 + kappa * t) * e / (4.0 * kappa * kappa * kappa);
    case 4: return -z * e / (4.0 * kappa);
    case 5: return (1.0 - kappa * t) * e / (4.0 * kappa);
    default: fail(ErrorKind::Usage, "inverse_ft: identity index must be 1..5");
  }
}

InverseFtSample inverse_ft_oracle(int j, double kappa, double z) {
  InverseFtSample out{0.0, inverse_ft_closed_form(j, kappa, z), 0.0};
  const Quad k2 = Quad(kappa) * Quad(kappa);
  const Quad t = Quad(std::abs(z));
  auto& rules = integrators();
  std::pair<Quad, Quad> result{0, 0};
  const bool odd = j == 2 || j == 4;
  if (odd) {
    // m_j = iξ g(ξ) with g even: inverse transform is -sgn(z)/π ∫_0^∞ sin(|z|ξ) ξ g(ξ) dξ,
    // integrated by parts into (1/|z|) ∫_0^∞ cos(|z|ξ) (ξ g)'(ξ) dξ
    if (z == 0.0) return out;
    auto dg = [&](Quad x) -> Quad {
      const Quad den = k2 + x * x;
      return j == 2 ? (k2 - x * x) / (den * den) : (k2 - 3 * x * x) / (den * den * den);
    };
    result = rules.cos_rule.integrate(dg, t);
    result.second *= abs(result.first / t) / std::numbers::pi;
    out.quadrature = -sgn(z) * static_cast<double>(result.first / t) / std::numbers::pi;
  } else {
    auto g = [&](Quad x) -> Quad {
      const Quad den = k2 + x * x;
      if (j == 1) return 1 / den;
      if (j == 3) return 1 / (den * den);
      return x * x / (den * den);
    };
    if (z == 0.0) {
      Quad err = 0;
      const Quad value = rules.half_line.integrate(g, Quad(1e-25), &err);
      result = {value, err / std::numbers::pi};
    } else {
      result = rules.cos_rule.integrate(g, t);
      result.second *= abs(result.first) / std::numbers::pi;
    }
    out.quadrature = static_cast<double>(result.first) / std::numbers::pi;
  }
  out.error_estimate = static_cast<double>(result.second) / std::max(std::abs(out.quadrature), envelope(j, kappa, z));
  if (!std::isfinite(out.quadrature) || !(out.error_estimate < 1e-8)) {
    std::ostringstream os;
    os << "inverse_ft: quadrature did not converge for identity " << j << " at kappa=" << kappa << ", z=" << z
       << " (error estimate " << out.error_estimate << ")";
    fail(ErrorKind::NumericGate, os.str());
  }
  return out;
}

double inverse_ft_relative_error(const InverseFtSample& s, int j, double kappa, double z) {
  const double diff = std::abs(s.quadrature - s.closed_form);
  if (s.closed_form != 0.0) return diff / std::abs(s.closed_form);
  return diff / envelope(j, kappa, z);
}

}  // namespace hsns

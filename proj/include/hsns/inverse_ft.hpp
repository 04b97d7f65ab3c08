#pragma once

namespace hsns {

/// One-dimensional inverse Fourier transforms in ξ_n of the five symbols
/// 1/(κ²+ξ²), iξ/(κ²+ξ²), 1/(κ²+ξ²)², iξ/(κ²+ξ²)², ξ²/(κ²+ξ²)².
struct InverseFtSample {
  double quadrature;
  double closed_form;
  double error_estimate;  ///< quadrature error over max(|value|, decay envelope)
};

double inverse_ft_closed_form(int j, double kappa, double z);

/// Evaluates (1/2π)∫ e^{izξ} m_j(ξ) dξ by oscillatory quadrature in
/// quad precision alongside the closed form.
InverseFtSample inverse_ft_oracle(int j, double kappa, double z);

/// |quadrature - closed| / |closed|, or divided by the kernel envelope
/// e^{-κ|z|}/(4κ) scale when the closed form vanishes.
double inverse_ft_relative_error(const InverseFtSample& s, int j, double kappa, double z);

}  // namespace hsns

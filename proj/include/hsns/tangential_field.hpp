#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hsns/grid.hpp"

namespace hsns {

using cplx = std::complex<double>;

/// Spectral coefficients of a real c-component function on the tangential
/// torus. Component c occupies coefficients [c * modes, (c+1) * modes).
/// Physical values are f(x) = sum_k f_k exp(i k.x 2π/L).
class TangentialField {
 public:
  TangentialField(const Grid& grid, int components);

  /// Values laid out as [component][point] with points in row-major order.
  static TangentialField from_physical(const Grid& grid, int components, std::span<const double> values);
  std::vector<double> to_physical() const;

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  std::size_t modes() const { return grid_.modes(); }

  std::span<cplx> component(int c) { return {data_.data() + c * modes(), modes()}; }
  std::span<const cplx> component(int c) const { return {data_.data() + c * modes(), modes()}; }
  cplx& operator()(int c, std::size_t mode) { return data_[c * modes() + mode]; }
  const cplx& operator()(int c, std::size_t mode) const { return data_[c * modes() + mode]; }
  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  /// Averages each coefficient with the conjugate of its partner and zeroes
  /// the zero mode and Nyquist modes.
  void enforce_invariants();
  /// Largest |f_k - conj(f_{-k})| over all components.
  double hermitian_defect() const;

  TangentialField slice(int first, int count) const;
  void set_slice(int first, const TangentialField& part);

  double max_abs() const;
  bool is_zero() const;

  TangentialField& operator+=(const TangentialField& other);
  TangentialField& operator-=(const TangentialField& other);
  TangentialField& operator*=(double s);
  TangentialField& axpy(double s, const TangentialField& other);

 private:
  void check_compatible(const TangentialField& other) const;

  Grid grid_;
  int components_;
  std::vector<cplx> data_;
};

TangentialField operator+(TangentialField a, const TangentialField& b);
TangentialField operator-(TangentialField a, const TangentialField& b);
TangentialField operator*(double s, TangentialField a);

/// Largest coefficient magnitude of a - b.
double max_abs_diff(const TangentialField& a, const TangentialField& b);

}  // namespace hsns

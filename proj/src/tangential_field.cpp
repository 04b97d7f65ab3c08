#include "hsns/tangential_field.hpp"

#include <algorithm>
#include <cmath>

#include "hsns/error.hpp"
#include "hsns/fft.hpp"

namespace hsns {

TangentialField::TangentialField(const Grid& grid, int components)
    : grid_(grid), components_(components) {
  if (components < 1) fail(ErrorKind::Usage, "field: component count must be >= 1");
  data_.assign(static_cast<std::size_t>(components) * grid.modes(), cplx(0.0, 0.0));
}

TangentialField TangentialField::from_physical(const Grid& grid, int components, std::span<const double> values) {
  TangentialField f(grid, components);
  const std::size_t n = grid.modes();
  if (values.size() != n * components) fail(ErrorKind::Data, "field: physical array has wrong length");
  const double scale = 1.0 / static_cast<double>(n);
  for (int c = 0; c < components; ++c) {
    auto comp = f.component(c);
    for (std::size_t i = 0; i < n; ++i) comp[i] = cplx(values[c * n + i], 0.0);
    fft::transform(grid.dim(), grid.points(), -1, comp);
    for (auto& v : comp) v *= scale;
  }
  f.enforce_invariants();
  return f;
}

std::vector<double> TangentialField::to_physical() const {
  const std::size_t n = modes();
  std::vector<double> out(n * components_);
  std::vector<cplx> work(n);
  for (int c = 0; c < components_; ++c) {
    auto comp = component(c);
    std::copy(comp.begin(), comp.end(), work.begin());
    fft::transform(grid_.dim(), grid_.points(), +1, work);
    for (std::size_t i = 0; i < n; ++i) out[c * n + i] = work[i].real();
  }
  return out;
}

void TangentialField::enforce_invariants() {
  const auto& table = grid_.table();
  for (int c = 0; c < components_; ++c) {
    auto comp = component(c);
    for (std::size_t m = 0; m < comp.size(); ++m) {
      if (!table.active[m]) {
        comp[m] = 0.0;
        continue;
      }
      const std::size_t p = table.partner[m];
      if (p < m) continue;
      if (p == m) {
        comp[m] = cplx(comp[m].real(), 0.0);
        continue;
      }
      const cplx avg = 0.5 * (comp[m] + std::conj(comp[p]));
      comp[m] = avg;
      comp[p] = std::conj(avg);
    }
  }
}

double TangentialField::hermitian_defect() const {
  const auto& table = grid_.table();
  double worst = 0.0;
  for (int c = 0; c < components_; ++c) {
    auto comp = component(c);
    for (std::size_t m = 0; m < comp.size(); ++m) {
      worst = std::max(worst, std::abs(comp[m] - std::conj(comp[table.partner[m]])));
    }
  }
  return worst;
}

TangentialField TangentialField::slice(int first, int count) const {
  if (first < 0 || count < 1 || first + count > components_) fail(ErrorKind::Usage, "field: component slice out of range");
  TangentialField out(grid_, count);
  std::copy(data_.begin() + first * modes(), data_.begin() + (first + count) * modes(), out.data_.begin());
  return out;
}

void TangentialField::set_slice(int first, const TangentialField& part) {
  if (!grid_.same_tangential(part.grid_)) fail(ErrorKind::Data, "field: grid mismatch");
  if (first < 0 || first + part.components_ > components_) fail(ErrorKind::Usage, "field: component slice out of range");
  std::copy(part.data_.begin(), part.data_.end(), data_.begin() + first * modes());
}

double TangentialField::max_abs() const {
  double worst = 0.0;
  for (const auto& v : data_) worst = std::max(worst, std::abs(v));
  return worst;
}

bool TangentialField::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& v) { return v == cplx(0.0, 0.0); });
}

void TangentialField::check_compatible(const TangentialField& other) const {
  if (!grid_.same_tangential(other.grid_)) fail(ErrorKind::Data, "field: grid mismatch");
  if (components_ != other.components_) fail(ErrorKind::Data, "field: component count mismatch");
}

TangentialField& TangentialField::operator+=(const TangentialField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

TangentialField& TangentialField::operator-=(const TangentialField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

TangentialField& TangentialField::operator*=(double s) {
  for (auto& v : data_) v *= s;
  return *this;
}

TangentialField& TangentialField::axpy(double s, const TangentialField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * other.data_[i];
  return *this;
}

TangentialField operator+(TangentialField a, const TangentialField& b) { return a += b; }
TangentialField operator-(TangentialField a, const TangentialField& b) { return a -= b; }
TangentialField operator*(double s, TangentialField a) { return a *= s; }

double max_abs_diff(const TangentialField& a, const TangentialField& b) {
  return (a - b).max_abs();
}

}  // namespace hsns

#pragma once

#include <optional>
#include <vector>

#include "hsns/tangential_field.hpp"

namespace hsns {

/// Piecewise-constant-in-x_n field: slab m holds the value on
/// [m h, (m+1) h), and the optional tail holds the constant value on
/// (X_max, ∞).
class HalfSpaceField {
 public:
  HalfSpaceField(const Grid& grid, int components, bool tail = false);

  /// Field equal to profile on every slab and on the tail.
  static HalfSpaceField constant(const Grid& grid, const TangentialField& profile);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  int slab_count() const { return static_cast<int>(slabs_.size()); }
  bool has_tail() const { return tail_.has_value(); }

  TangentialField& slab(int m) { return slabs_.at(m); }
  const TangentialField& slab(int m) const { return slabs_.at(m); }
  TangentialField& tail();
  const TangentialField& tail() const;
  void set_tail(const TangentialField& t);
  void drop_tail() { tail_.reset(); }

  /// Slabs followed by the tail when present.
  int block_count() const { return slab_count() + (has_tail() ? 1 : 0); }
  TangentialField& block(int b) { return b < slab_count() ? slabs_[b] : tail(); }
  const TangentialField& block(int b) const { return b < slab_count() ? slabs_[b] : tail(); }

  HalfSpaceField slice(int first, int count) const;
  void enforce_invariants();
  double max_abs() const;
  bool is_zero() const;

  HalfSpaceField& operator+=(const HalfSpaceField& other);
  HalfSpaceField& operator-=(const HalfSpaceField& other);
  HalfSpaceField& operator*=(double s);

 private:
  void check_compatible(const HalfSpaceField& other) const;

  Grid grid_;
  int components_;
  std::vector<TangentialField> slabs_;
  std::optional<TangentialField> tail_;
};

HalfSpaceField operator+(HalfSpaceField a, const HalfSpaceField& b);
HalfSpaceField operator-(HalfSpaceField a, const HalfSpaceField& b);
HalfSpaceField operator*(double s, HalfSpaceField a);

}  // namespace hsns

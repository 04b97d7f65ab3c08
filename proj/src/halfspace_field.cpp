#include "hsns/halfspace_field.hpp"

#include <algorithm>

#include "hsns/error.hpp"

namespace hsns {

HalfSpaceField::HalfSpaceField(const Grid& grid, int components, bool tail)
    : grid_(grid), components_(components) {
  slabs_.assign(grid.slab_count(), TangentialField(grid, components));
  if (tail) tail_.emplace(grid, components);
}

HalfSpaceField HalfSpaceField::constant(const Grid& grid, const TangentialField& profile) {
  if (!grid.same_tangential(profile.grid())) fail(ErrorKind::Data, "halfspace: profile grid mismatch");
  HalfSpaceField out(grid, profile.components(), true);
  for (auto& s : out.slabs_) s = profile;
  out.tail_ = profile;
  return out;
}

TangentialField& HalfSpaceField::tail() {
  if (!tail_) fail(ErrorKind::Usage, "halfspace: field has no tail");
  return *tail_;
}

const TangentialField& HalfSpaceField::tail() const {
  if (!tail_) fail(ErrorKind::Usage, "halfspace: field has no tail");
  return *tail_;
}

void HalfSpaceField::set_tail(const TangentialField& t) {
  if (!grid_.same_tangential(t.grid()) || t.components() != components_) {
    fail(ErrorKind::Data, "halfspace: tail shape mismatch");
  }
  tail_ = t;
}

HalfSpaceField HalfSpaceField::slice(int first, int count) const {
  HalfSpaceField out(grid_, count, has_tail());
  for (int m = 0; m < slab_count(); ++m) out.slabs_[m] = slabs_[m].slice(first, count);
  if (tail_) out.tail_ = tail_->slice(first, count);
  return out;
}

void HalfSpaceField::enforce_invariants() {
  for (auto& s : slabs_) s.enforce_invariants();
  if (tail_) tail_->enforce_invariants();
}

double HalfSpaceField::max_abs() const {
  double worst = 0.0;
  for (int b = 0; b < block_count(); ++b) worst = std::max(worst, block(b).max_abs());
  return worst;
}

bool HalfSpaceField::is_zero() const {
  for (int b = 0; b < block_count(); ++b) {
    if (!block(b).is_zero()) return false;
  }
  return true;
}

void HalfSpaceField::check_compatible(const HalfSpaceField& other) const {
  if (!(grid_ == other.grid_)) fail(ErrorKind::Data, "halfspace: grid mismatch");
  if (components_ != other.components_) fail(ErrorKind::Data, "halfspace: component count mismatch");
}

HalfSpaceField& HalfSpaceField::operator+=(const HalfSpaceField& other) {
  check_compatible(other);
  for (int m = 0; m < slab_count(); ++m) slabs_[m] += other.slabs_[m];
  if (other.tail_) {
    if (tail_) *tail_ += *other.tail_;
    else tail_ = other.tail_;
  }
  return *this;
}

HalfSpaceField& HalfSpaceField::operator-=(const HalfSpaceField& other) {
  check_compatible(other);
  for (int m = 0; m < slab_count(); ++m) slabs_[m] -= other.slabs_[m];
  if (other.tail_) {
    if (!tail_) tail_.emplace(grid_, components_);
    *tail_ -= *other.tail_;
  }
  return *this;
}

HalfSpaceField& HalfSpaceField::operator*=(double s) {
  for (auto& slab : slabs_) slab *= s;
  if (tail_) *tail_ *= s;
  return *this;
}

HalfSpaceField operator+(HalfSpaceField a, const HalfSpaceField& b) { return a += b; }
HalfSpaceField operator-(HalfSpaceField a, const HalfSpaceField& b) { return a -= b; }
HalfSpaceField operator*(double s, HalfSpaceField a) { return a *= s; }

}  // namespace hsns

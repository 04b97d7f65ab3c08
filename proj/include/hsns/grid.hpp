#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace hsns {

/// Precomputed per-mode data for one tangential torus. Modes use FFT
/// ordering along every axis: 0, 1, ..., N/2-1, -N/2, ..., -1, with the
/// last axis running fastest.
struct ModeTable {
  std::vector<double> xi;              ///< d entries per mode, ξ' = 2π k / L
  std::vector<double> kappa;           ///< |ξ'| per mode
  std::vector<int> index_norm2;        ///< |k|^2 as an integer
  std::vector<std::size_t> partner;    ///< linear index of -k
  std::vector<unsigned char> active;   ///< 0 for the zero mode and any Nyquist mode

  /// Active modes with index <= partner, grouped by |k|^2. Every mode in a
  /// group shares the same κ; the conjugate partners are implied.
  struct Group {
    double kappa;
    std::vector<std::size_t> modes;
  };
  std::vector<Group> canonical_groups;
};

/// Discretization of R^{n-1} x (0, ∞): a d-dimensional torus of period L
/// with N points per axis, times M piecewise-constant slabs of width
/// h = X_max / M and a constant tail above X_max.
class Grid {
 public:
  Grid(int d, int n_points, double period, int slabs = 1, double height = 1.0);

  int dim() const { return d_; }
  int points() const { return n_; }
  double period() const { return period_; }
  int slab_count() const { return slabs_; }
  double height() const { return height_; }
  double slab_width() const { return height_ / slabs_; }
  double slab_center(int m) const { return (m + 0.5) * slab_width(); }
  std::vector<double> slab_centers() const;

  std::size_t modes() const { return modes_; }
  double cell_volume() const;
  double torus_volume() const;

  double kappa_min() const;
  double kappa_max() const;

  const ModeTable& table() const { return *table_; }
  double kappa(std::size_t mode) const { return table_->kappa[mode]; }
  std::span<const double> xi(std::size_t mode) const {
    return {table_->xi.data() + mode * d_, static_cast<std::size_t>(d_)};
  }
  bool active(std::size_t mode) const { return table_->active[mode] != 0; }
  std::size_t partner(std::size_t mode) const { return table_->partner[mode]; }

  /// Linear index of the multi-index k (entries in [-N/2, N/2)).
  std::size_t mode_index(std::span<const int> k) const;
  /// Signed multi-index of a linear mode index.
  std::vector<int> multi_index(std::size_t mode) const;

  /// Grid for u_λ(x) = λ u(λx) with λ = 2^power: same N and M, period and
  /// height divided by λ.
  Grid dyadic_companion(int power) const;

  bool same_tangential(const Grid& other) const;
  bool operator==(const Grid& other) const;

 private:
  int d_;
  int n_;
  double period_;
  int slabs_;
  double height_;
  std::size_t modes_;
  std::shared_ptr<const ModeTable> table_;
};

/// Littlewood–Paley indices that can be nonzero on a grid. Chosen with
/// 2^{j_min} <= κ_min and 2^{j_max} >= κ_max so that the blocks sum to one
/// on every represented nonzero frequency.
struct DyadicRange {
  int j_min;
  int j_max;

  static DyadicRange for_grid(const Grid& grid);
  bool contains(int j) const { return j >= j_min && j <= j_max; }
  int size() const { return j_max - j_min + 1; }
};

}  // namespace hsns

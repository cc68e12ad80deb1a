#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace smap {

/// Uniform periodic lattice on the torus [0, L)^d together with its dual
/// frequency lattice (2 pi / L) * {-n/2, ..., n/2 - 1}^d.
///
/// Samples are stored row-major with the last axis fastest. Axes are
/// zero-based. Frequency tables are computed once and shared between
/// copies, so a Grid is cheap to pass by value.
class Grid {
 public:
  static constexpr int kMinDim = 2;
  static constexpr int kMaxDim = 4;
  static constexpr int kMinPoints = 8;

  using Index = std::array<int, kMaxDim>;

  Grid(int dim, int n, double length);

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  std::size_t size() const noexcept { return size_; }
  double spacing() const noexcept { return length_ / n_; }
  double cell_volume() const noexcept;
  double volume() const noexcept;
  std::size_t stride(int axis) const noexcept { return strides_[axis]; }

  Index index(std::size_t flat) const noexcept;
  std::size_t flat(const Index& idx) const noexcept;
  /// Flat index of the neighbour one step along `axis` (periodic), with
  /// `step` = +1 or -1.
  std::size_t neighbour(std::size_t flat, int axis, int step) const noexcept;

  /// x_axis = i_axis * h for the sample at `flat`.
  double coordinate(std::size_t flat, int axis) const noexcept;

  /// Signed integer frequency in [-n/2, n/2) of the sample at `flat`.
  int mode(std::size_t flat, int axis) const noexcept;
  /// xi_axis at every flat index.
  std::span<const double> wavenumbers(int axis) const noexcept;
  /// xi_axis with the unpaired mode -n/2 set to zero, for odd symbols such as
  /// i xi_axis, so that they map real fields to real fields.
  std::span<const double> odd_wavenumbers(int axis) const noexcept;
  /// |xi|^2 at every flat index.
  std::span<const double> wavenumber_norm2() const noexcept;
  double max_wavenumber_norm2() const noexcept { return max_xi2_; }
  double min_nonzero_wavenumber() const noexcept;

  void check_axis(int axis) const;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  struct Tables {
    std::array<std::vector<double>, kMaxDim> xi;
    std::array<std::vector<double>, kMaxDim> xi_odd;
    std::vector<double> xi2;
  };

  int dim_;
  int n_;
  double length_;
  std::size_t size_;
  std::array<std::size_t, kMaxDim> strides_{};
  double max_xi2_;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace smap

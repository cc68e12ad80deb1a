#include "smap/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace smap {

Grid::Grid(int dim, int n, double length) : dim_(dim), n_(n), length_(length) {
  if (dim < kMinDim || dim > kMaxDim) {
    throw std::invalid_argument("Grid: dimension must be in [2, 4], got " + std::to_string(dim));
  }
  if (n < kMinPoints || n % 2 != 0) {
    throw std::invalid_argument("Grid: points per axis must be even and >= 8, got " +
                                std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("Grid: period length must be positive and finite");
  }

  size_ = 1;
  for (int a = dim_ - 1; a >= 0; --a) {
    strides_[a] = size_;
    size_ *= static_cast<std::size_t>(n_);
  }

  auto tables = std::make_shared<Tables>();
  const double k0 = 2.0 * std::numbers::pi / length_;
  tables->xi2.assign(size_, 0.0);
  for (int a = 0; a < dim_; ++a) {
    auto& xi = tables->xi[a];
    auto& odd = tables->xi_odd[a];
    xi.resize(size_);
    odd.resize(size_);
    for (std::size_t i = 0; i < size_; ++i) {
      const int m = mode(i, a);
      xi[i] = k0 * m;
      odd[i] = m == -n_ / 2 ? 0.0 : xi[i];
      tables->xi2[i] += xi[i] * xi[i];
    }
  }
  max_xi2_ = dim_ * std::pow(k0 * (n_ / 2), 2);
  tables_ = std::move(tables);
}

double Grid::cell_volume() const noexcept { return std::pow(spacing(), dim_); }

double Grid::volume() const noexcept { return std::pow(length_, dim_); }

Grid::Index Grid::index(std::size_t flat) const noexcept {
  Index idx{};
  for (int a = 0; a < dim_; ++a) {
    idx[a] = static_cast<int>((flat / strides_[a]) % static_cast<std::size_t>(n_));
  }
  return idx;
}

std::size_t Grid::flat(const Index& idx) const noexcept {
  std::size_t f = 0;
  for (int a = 0; a < dim_; ++a) f += static_cast<std::size_t>(idx[a]) * strides_[a];
  return f;
}

std::size_t Grid::neighbour(std::size_t flat, int axis, int step) const noexcept {
  const int i = static_cast<int>((flat / strides_[axis]) % static_cast<std::size_t>(n_));
  const int j = ((i + step) % n_ + n_) % n_;
  return flat + (static_cast<std::ptrdiff_t>(j) - i) * static_cast<std::ptrdiff_t>(strides_[axis]);
}

double Grid::coordinate(std::size_t flat, int axis) const noexcept {
  return spacing() * static_cast<double>((flat / strides_[axis]) % static_cast<std::size_t>(n_));
}

int Grid::mode(std::size_t flat, int axis) const noexcept {
  const int i = static_cast<int>((flat / strides_[axis]) % static_cast<std::size_t>(n_));
  return i < n_ / 2 ? i : i - n_;
}

std::span<const double> Grid::wavenumbers(int axis) const noexcept { return tables_->xi[axis]; }

std::span<const double> Grid::odd_wavenumbers(int axis) const noexcept {
  return tables_->xi_odd[axis];
}

std::span<const double> Grid::wavenumber_norm2() const noexcept { return tables_->xi2; }

double Grid::min_nonzero_wavenumber() const noexcept { return 2.0 * std::numbers::pi / length_; }

void Grid::check_axis(int axis) const {
  if (axis < 0 || axis >= dim_) {
    throw std::invalid_argument("axis " + std::to_string(axis) + " out of range for a " +
                                std::to_string(dim_) + "-dimensional grid");
  }
}

}  // namespace smap

#include "smap/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace smap {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": fields live on different grids");
}

ScalarField::ScalarField(Grid grid) : grid_(std::move(grid)), values_(grid_.size()) {}

ScalarField::ScalarField(Grid grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("ScalarField: expected " + std::to_string(grid_.size()) +
                                " samples, got " + std::to_string(values_.size()));
  }
}

ScalarField ScalarField::real_part() const {
  ScalarField out(grid_);
  for (std::size_t i = 0; i < size(); ++i) out.values_[i] = values_[i].real();
  return out;
}

ScalarField ScalarField::imag_part() const {
  ScalarField out(grid_);
  for (std::size_t i = 0; i < size(); ++i) out.values_[i] = values_[i].imag();
  return out;
}

ScalarField ScalarField::conj() const {
  ScalarField out(grid_);
  for (std::size_t i = 0; i < size(); ++i) out.values_[i] = std::conj(values_[i]);
  return out;
}

bool ScalarField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& c : values_) m = std::max(m, std::abs(c));
  return m;
}

double ScalarField::max_abs_imag() const noexcept {
  double m = 0.0;
  for (const auto& c : values_) m = std::max(m, std::abs(c.imag()));
  return m;
}

Complex ScalarField::mean() const noexcept {
  Complex sum = 0.0;
  for (const auto& c : values_) sum += c;
  return sum / static_cast<double>(values_.size());
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField +=");
  for (std::size_t i = 0; i < size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField -=");
  for (std::size_t i = 0; i < size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(Complex a) noexcept {
  for (auto& c : values_) c *= a;
  return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField *=");
  for (std::size_t i = 0; i < size(); ++i) values_[i] *= o.values_[i];
  return *this;
}

VectorField3::VectorField3(Grid grid) : grid_(std::move(grid)), values_(grid_.size()) {}

VectorField3::VectorField3(Grid grid, std::vector<Vec3> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("VectorField3: expected " + std::to_string(grid_.size()) +
                                " samples, got " + std::to_string(values_.size()));
  }
}

VectorField3 VectorField3::from_components(const ScalarField& x, const ScalarField& y,
                                           const ScalarField& z) {
  require_same_grid(x.grid(), y.grid(), "VectorField3::from_components");
  require_same_grid(x.grid(), z.grid(), "VectorField3::from_components");
  VectorField3 out(x.grid());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values_[i] = {x[i].real(), y[i].real(), z[i].real()};
  }
  return out;
}

ScalarField VectorField3::component(int c) const {
  ScalarField out(grid_);
  for (std::size_t i = 0; i < size(); ++i) out[i] = values_[i][c];
  return out;
}

bool VectorField3::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
  });
}

VectorField3& VectorField3::operator+=(const VectorField3& o) {
  require_same_grid(grid_, o.grid_, "VectorField3 +=");
  for (std::size_t i = 0; i < size(); ++i) values_[i] += o.values_[i];
  return *this;
}

VectorField3& VectorField3::operator-=(const VectorField3& o) {
  require_same_grid(grid_, o.grid_, "VectorField3 -=");
  for (std::size_t i = 0; i < size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

VectorField3& VectorField3::operator*=(double a) noexcept {
  for (auto& v : values_) v *= a;
  return *this;
}

VectorField3& VectorField3::axpy(double a, const VectorField3& o) {
  require_same_grid(grid_, o.grid_, "VectorField3::axpy");
  for (std::size_t i = 0; i < size(); ++i) values_[i] += a * o.values_[i];
  return *this;
}

ScalarField dot(const VectorField3& a, const VectorField3& b) {
  require_same_grid(a.grid(), b.grid(), "dot");
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], b[i]);
  return out;
}

VectorField3 cross(const VectorField3& a, const VectorField3& b) {
  require_same_grid(a.grid(), b.grid(), "cross");
  VectorField3 out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = cross(a[i], b[i]);
  return out;
}

}  // namespace smap

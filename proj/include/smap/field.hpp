#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "smap/grid.hpp"

namespace smap {

using Complex = std::complex<double>;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double& operator[](int c) noexcept { return c == 0 ? x : (c == 1 ? y : z); }
  double operator[](int c) const noexcept { return c == 0 ? x : (c == 1 ? y : z); }

  Vec3& operator+=(const Vec3& o) noexcept {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) noexcept {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  Vec3& operator*=(double a) noexcept {
    x *= a;
    y *= a;
    z *= a;
    return *this;
  }

  friend Vec3 operator+(Vec3 a, const Vec3& b) noexcept { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) noexcept { return a -= b; }
  friend Vec3 operator-(const Vec3& a) noexcept { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(double a, Vec3 v) noexcept { return v *= a; }
  friend Vec3 operator*(Vec3 v, double a) noexcept { return v *= a; }
  friend Vec3 operator/(Vec3 v, double a) noexcept { return v *= (1.0 / a); }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) noexcept {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) noexcept { return std::sqrt(dot(a, a)); }

/// Complex samples on a Grid.
class ScalarField {
 public:
  explicit ScalarField(Grid grid);
  ScalarField(Grid grid, std::vector<Complex> values);

  /// Samples `fn(x)` at every grid point; `x` holds d coordinates.
  template <class Fn>
  static ScalarField from_function(const Grid& grid, Fn&& fn) {
    ScalarField out(grid);
    std::vector<double> x(grid.dim());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (int a = 0; a < grid.dim(); ++a) x[a] = grid.coordinate(i, a);
      out.values_[i] = Complex(fn(std::span<const double>(x)));
    }
    return out;
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }
  Complex operator[](std::size_t i) const noexcept { return values_[i]; }
  Complex& operator[](std::size_t i) noexcept { return values_[i]; }

  ScalarField real_part() const;
  ScalarField imag_part() const;
  ScalarField conj() const;
  bool all_finite() const noexcept;
  double max_abs() const noexcept;
  double max_abs_imag() const noexcept;
  Complex mean() const noexcept;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(Complex a) noexcept;
  /// Pointwise product. No dealiasing; see spectral::dealiased_product.
  ScalarField& operator*=(const ScalarField& o);

  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(ScalarField a, Complex s) { return a *= s; }
  friend ScalarField operator*(Complex s, ScalarField a) { return a *= s; }
  friend ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }

 private:
  Grid grid_;
  std::vector<Complex> values_;
};

/// R^3-valued samples on a Grid.
class VectorField3 {
 public:
  explicit VectorField3(Grid grid);
  VectorField3(Grid grid, std::vector<Vec3> values);

  template <class Fn>
  static VectorField3 from_function(const Grid& grid, Fn&& fn) {
    VectorField3 out(grid);
    std::vector<double> x(grid.dim());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (int a = 0; a < grid.dim(); ++a) x[a] = grid.coordinate(i, a);
      out.values_[i] = fn(std::span<const double>(x));
    }
    return out;
  }

  /// Real parts of the three inputs become the components.
  static VectorField3 from_components(const ScalarField& x, const ScalarField& y,
                                      const ScalarField& z);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const Vec3> values() const noexcept { return values_; }
  std::span<Vec3> values() noexcept { return values_; }
  const Vec3& operator[](std::size_t i) const noexcept { return values_[i]; }
  Vec3& operator[](std::size_t i) noexcept { return values_[i]; }

  ScalarField component(int c) const;
  bool all_finite() const noexcept;

  VectorField3& operator+=(const VectorField3& o);
  VectorField3& operator-=(const VectorField3& o);
  VectorField3& operator*=(double a) noexcept;
  /// this += a * o
  VectorField3& axpy(double a, const VectorField3& o);

  friend VectorField3 operator+(VectorField3 a, const VectorField3& b) { return a += b; }
  friend VectorField3 operator-(VectorField3 a, const VectorField3& b) { return a -= b; }
  friend VectorField3 operator*(double s, VectorField3 a) { return a *= s; }

 private:
  Grid grid_;
  std::vector<Vec3> values_;
};

/// Pointwise dot product as a (real) ScalarField.
ScalarField dot(const VectorField3& a, const VectorField3& b);
VectorField3 cross(const VectorField3& a, const VectorField3& b);

void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace smap

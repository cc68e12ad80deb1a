#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "smap/field.hpp"
#include "smap/geometry.hpp"
#include "smap/initial_data.hpp"
#include "smap/spectral.hpp"

namespace smap::testing {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Complex random field with modes |k|_inf <= cutoff.
inline ScalarField random_field(const Grid& grid, std::uint64_t seed, int cutoff = 3,
                                bool real = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> c(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    bool inside = true;
    for (int a = 0; a < grid.dim(); ++a) inside = inside && std::abs(grid.mode(i, a)) <= cutoff;
    const double re = u(rng), im = u(rng);
    if (inside) c[i] = Complex(re, im) * static_cast<double>(grid.size());
  }
  ScalarField f = spectral::from_coefficients(grid, std::move(c));
  return real ? f.real_part() : f;
}

/// Fully random samples (all modes populated).
inline ScalarField noise_field(const Grid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarField f(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) f[i] = Complex(u(rng), u(rng));
  return f;
}

inline double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_diff(const VectorField3& a, const VectorField3& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, norm(a[i] - b[i]));
  return m;
}

inline InitialDataSpec bump(double eps, double width = 0.5, Vec3 u = {0.0, 1.0, 0.0}) {
  InitialDataSpec spec;
  spec.amplitude = eps;
  spec.width = width;
  spec.transverse = u;
  return spec;
}

/// Transverse direction with a component along the default Q' = (1,0,0), so
/// that geodesic bumps have a non-trivial projection frame.
inline Vec3 tilted_transverse() { return {0.5, std::sqrt(3.0) / 2.0, 0.0}; }

}  // namespace smap::testing

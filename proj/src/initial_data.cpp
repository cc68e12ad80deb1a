#include "smap/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "smap/spectral.hpp"

namespace smap {
namespace {

constexpr double kOrthogonalityTolerance = 1e-12;

void validate(const InitialDataSpec& spec) {
  if (!(spec.amplitude >= 0.0) || !std::isfinite(spec.amplitude)) {
    throw std::invalid_argument("initial amplitude must be finite and >= 0");
  }
  if (std::abs(norm(spec.base) - 1.0) > kOrthogonalityTolerance) {
    throw std::invalid_argument("base point Q must be a unit vector");
  }
  if (std::abs(norm(spec.transverse) - 1.0) > kOrthogonalityTolerance) {
    throw std::invalid_argument("transverse direction U must be a unit vector");
  }
  if (std::abs(dot(spec.base, spec.transverse)) > kOrthogonalityTolerance) {
    throw std::invalid_argument("transverse direction U must be orthogonal to Q");
  }
  if (spec.kind == InitialKind::GeodesicBump || spec.kind == InitialKind::StereographicPullback) {
    if (spec.profile == Profile::Bump && !(spec.width > 0.0)) {
      throw std::invalid_argument("bump width must be > 0");
    }
  }
  if (spec.kind == InitialKind::BandLimitedRandom && spec.mode_cutoff < 1) {
    throw std::invalid_argument("mode_cutoff must be >= 1");
  }
}

// Real field with random coefficients on modes |k|_inf <= cutoff.
ScalarField random_band_limited(const Grid& grid, int cutoff, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> c(grid.size(), Complex(0.0));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    bool inside = true;
    for (int a = 0; a < grid.dim(); ++a) inside = inside && std::abs(grid.mode(i, a)) <= cutoff;
    const double re = normal(rng);
    const double im = normal(rng);
    if (inside) c[i] = Complex(re, im);
  }
  return spectral::from_coefficients(grid, std::move(c)).real_part();
}

SphereField geodesic(const InitialDataSpec& spec, const Grid& grid) {
  const Vec3 q = spec.base;
  const Vec3 u = spec.transverse;
  auto s = VectorField3::from_function(grid, [&](std::span<const double> x) {
    const double angle = spec.amplitude * profile_value(spec, x, grid.length());
    return std::cos(angle) * q + std::sin(angle) * u;
  });
  return SphereField(std::move(s), q);
}

SphereField band_limited(const InitialDataSpec& spec, const Grid& grid) {
  std::mt19937_64 rng(spec.seed);
  const Vec3 e1 = spec.transverse;
  const Vec3 e2 = cross(spec.base, spec.transverse);
  const ScalarField p1 = random_band_limited(grid, spec.mode_cutoff, rng);
  const ScalarField p2 = random_band_limited(grid, spec.mode_cutoff, rng);
  double peak = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    peak = std::max(peak, std::hypot(p1[i].real(), p2[i].real()));
  }
  const double scale = peak > 0.0 ? spec.amplitude / peak : 0.0;
  VectorField3 s(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 v = spec.base + scale * (p1[i].real() * e1 + p2[i].real() * e2);
    s[i] = v / norm(v);
  }
  return SphereField(std::move(s), spec.base);
}

SphereField stereographic(const InitialDataSpec& spec, const Grid& grid) {
  const Vec3 e1 = spec.transverse;
  const Vec3 e2 = cross(spec.base, spec.transverse);
  const double k0 = 2.0 * std::numbers::pi / grid.length();
  auto s = VectorField3::from_function(grid, [&](std::span<const double> x) {
    const Complex zeta =
        spec.amplitude * profile_value(spec, x, grid.length()) * std::polar(1.0, k0 * x[0]);
    const double r2 = std::norm(zeta);
    const Vec3 v = (2.0 * zeta.real()) * e1 + (2.0 * zeta.imag()) * e2 + (1.0 - r2) * spec.base;
    return v / (1.0 + r2);
  });
  return SphereField(std::move(s), spec.base);
}

}  // namespace

double profile_value(const InitialDataSpec& spec, std::span<const double> x, double length) {
  const double k0 = 2.0 * std::numbers::pi / length;
  if (spec.profile == Profile::Cosine) return std::cos(k0 * x[0]);
  double sum = 0.0;
  for (double xa : x) sum += std::cos(k0 * xa - std::numbers::pi) - 1.0;
  return std::exp(sum / (spec.width * spec.width));
}

SphereField generate_initial(const InitialDataSpec& spec, const Grid& grid) {
  validate(spec);
  switch (spec.kind) {
    case InitialKind::GeodesicBump:
      return geodesic(spec, grid);
    case InitialKind::BandLimitedRandom:
      return band_limited(spec, grid);
    case InitialKind::StereographicPullback:
      return stereographic(spec, grid);
  }
  throw std::invalid_argument("unknown initial data kind");
}

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::GeodesicBump:
      return "geodesic-bump";
    case InitialKind::BandLimitedRandom:
      return "band-limited-random";
    case InitialKind::StereographicPullback:
      return "stereographic-pullback";
  }
  return "?";
}

std::string to_string(Profile profile) { return profile == Profile::Bump ? "bump" : "cosine"; }

InitialKind parse_initial_kind(const std::string& text) {
  if (text == "geodesic-bump") return InitialKind::GeodesicBump;
  if (text == "band-limited-random") return InitialKind::BandLimitedRandom;
  if (text == "stereographic-pullback") return InitialKind::StereographicPullback;
  throw std::invalid_argument("unknown initial kind '" + text + "'");
}

Profile parse_profile(const std::string& text) {
  if (text == "bump") return Profile::Bump;
  if (text == "cosine") return Profile::Cosine;
  throw std::invalid_argument("unknown profile '" + text + "'");
}

}  // namespace smap

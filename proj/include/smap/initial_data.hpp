#pragma once

#include <cstdint>
#include <string>

#include "smap/geometry.hpp"

namespace smap {

enum class InitialKind { GeodesicBump, BandLimitedRandom, StereographicPullback };
enum class Profile { Bump, Cosine };

/// Small-data initial condition near the constant map Q.
///
/// Profiles are written in x / L, so the same spec on a grid of length L/2
/// produces s0(2x).
///   bump:   theta(x) = exp(sum_a (cos(2 pi (x_a / L - 1/2)) - 1) / width^2)
///   cosine: theta(x) = cos(2 pi x_0 / L)
struct InitialDataSpec {
  InitialKind kind = InitialKind::GeodesicBump;
  Profile profile = Profile::Bump;
  double amplitude = 0.05;
  double width = 0.5;
  int mode_cutoff = 3;
  std::uint64_t seed = 1;
  Vec3 base{0.0, 0.0, 1.0};
  Vec3 transverse{0.0, 1.0, 0.0};
};

/// Profile value theta(x) at a point with d coordinates.
double profile_value(const InitialDataSpec& spec, std::span<const double> x, double length);

/// geodesic-bump: s = cos(eps theta) Q + sin(eps theta) U.
/// band-limited-random: s = (Q + eps p) / |Q + eps p| with p a random
///   tangent field of modes |k|_inf <= mode_cutoff, scaled to max |p| = 1.
/// stereographic-pullback: inverse stereographic image of
///   zeta = eps theta(x) exp(2 pi i x_0 / L) in the basis (U, Q x U, Q).
/// Throws std::invalid_argument for eps < 0, non-unit Q or U, or U not
/// orthogonal to Q (tolerance 1e-12).
SphereField generate_initial(const InitialDataSpec& spec, const Grid& grid);

std::string to_string(InitialKind kind);
std::string to_string(Profile profile);
InitialKind parse_initial_kind(const std::string& text);
Profile parse_profile(const std::string& text);

}  // namespace smap

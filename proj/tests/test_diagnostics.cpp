#include <gtest/gtest.h>

#include "smap/diagnostics.hpp"
#include "smap/evolution.hpp"
#include "support.hpp"

namespace smap {
namespace {

using namespace testing;
using diagnostics::Direction;
using diagnostics::kInf;
using diagnostics::SpaceTimeRecord;

SphereField constant_map(const Grid& g, Vec3 q) {
  return SphereField(VectorField3::from_function(g, [&](auto) { return q; }), q);
}

// Rotation by angle a about the unit axis n (Rodrigues).
Vec3 rotate(Vec3 v, Vec3 n, double a) {
  return std::cos(a) * v + std::sin(a) * cross(n, v) + (1.0 - std::cos(a)) * dot(n, v) * n;
}

TEST(Energy, ConstantMapIsZero) {
  EXPECT_EQ(diagnostics::energy(constant_map(Grid(2, 16, kTwoPi), {0, 0, 1})), 0.0);
}

// |d_1 s|^2 = eps^2 sin^2 x_1, integral 0.01 * 2 pi^2.
TEST(Energy, MeridianClosedForm) {
  const Grid g(2, 32, kTwoPi);
  const VectorField3 v = VectorField3::from_function(g, [](auto x) {
    const double theta = 0.1 * std::cos(x[0]);
    return Vec3{std::sin(theta), 0.0, std::cos(theta)};
  });
  const double e = diagnostics::energy(SphereField(v, {0, 0, 1}));
  EXPECT_NEAR(e, 0.197392, 1e-6 * 0.197392);
  EXPECT_NEAR(e, 0.02 * kPi * kPi, 1e-12);
}

TEST(L2DistanceQ, GeodesicQuadrature) {
  const Grid g(2, 24, 3.0);
  EXPECT_EQ(diagnostics::l2_distance_q(constant_map(g, {0, 0, 1}), {0, 0, 1}), 0.0);
  const InitialDataSpec spec = bump(0.3, 0.6);
  const SphereField s = generate_initial(spec, g);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x[2] = {g.coordinate(i, 0), g.coordinate(i, 1)};
    const double theta = profile_value(spec, x, g.length());
    sum += 2.0 - 2.0 * std::cos(0.3 * theta);
  }
  EXPECT_NEAR(diagnostics::l2_distance_q(s, s.base()), std::sqrt(sum * g.cell_volume()), 1e-13);
}

TEST(L2DistanceQ, RotationInvariant) {
  const Grid g(3, 12, kTwoPi);
  const SphereField s = generate_initial(bump(0.2), g);
  const Vec3 n = (1.0 / std::sqrt(3.0)) * Vec3{1, 1, 1};
  VectorField3 rotated(g);
  for (std::size_t i = 0; i < g.size(); ++i) rotated[i] = rotate(s[i], n, 0.7);
  const Vec3 q = rotate(s.base(), n, 0.7);
  const SphereField t(rotated, q);
  EXPECT_NEAR(diagnostics::l2_distance_q(t, q), diagnostics::l2_distance_q(s, s.base()), 1e-13);
  EXPECT_NEAR(diagnostics::critical_norm(t, q), diagnostics::critical_norm(s, s.base()), 1e-12);
  EXPECT_NEAR(diagnostics::energy(t), diagnostics::energy(s), 1e-12);
}

// s - Q = (cos k x_1, sin k x_1, -1): two single modes of L^2 mass
// L^d / 2 each, plus a constant that the homogeneous norm ignores.
TEST(CriticalNorm, SingleModeClosedForm) {
  for (int d = 2; d <= 3; ++d) {
    const Grid g(d, 16, kTwoPi);
    EXPECT_EQ(diagnostics::critical_norm(constant_map(g, {0, 0, 1}), {0, 0, 1}), 0.0);
    for (int k : {1, 2}) {
      const VectorField3 v = VectorField3::from_function(g, [&](auto x) {
        return Vec3{std::cos(k * x[0]), std::sin(k * x[0]), 0.0};
      });
      const double expect = std::pow(kTwoPi, 0.5 * d) * std::pow(k, 0.5 * d);
      EXPECT_NEAR(diagnostics::critical_norm(SphereField(v, {0, 0, 1}), {0, 0, 1}), expect,
                  1e-12 * expect);
    }
  }
}

// For theta = cos x_1, || cos x_1 ||_{H-dot^1} = pi sqrt(2) in d = 2.
TEST(CriticalNorm, LinearInAmplitude) {
  const Grid g(2, 32, kTwoPi);
  InitialDataSpec spec = bump(1e-3);
  spec.profile = Profile::Cosine;
  const double ratio = diagnostics::critical_norm(generate_initial(spec, g), spec.base) / 1e-3;
  EXPECT_NEAR(ratio, kPi * std::sqrt(2.0), 1e-4 * kPi * std::sqrt(2.0));
}

// In d = 2 the critical norm is the energy norm and |d s| = eps |d theta|
// along a geodesic, so it is exactly linear; in d = 3 the correction is cubic.
TEST(CriticalNorm, AmplitudeExpansionForBumps) {
  for (int d = 2; d <= 3; ++d) {
    const Grid g(d, d == 2 ? 32 : 24, kTwoPi);
    auto norm_at = [&](double eps) {
      return diagnostics::critical_norm(generate_initial(bump(eps, 0.8), g), {0, 0, 1});
    };
    const double slope0 = norm_at(1e-4) / 1e-4;
    auto defect = [&](double eps) { return std::abs(norm_at(eps) - eps * slope0); };
    if (d == 2) {
      EXPECT_LT(defect(0.1), 1e-14);
    } else {
      EXPECT_NEAR(std::log10(defect(0.1) / defect(0.01)), 3.0, 0.1);
    }
  }
}

TEST(FrameBoundRatio, GuardedAtQ) {
  EXPECT_EQ(diagnostics::frame_bound_ratio(constant_map(Grid(2, 16, kTwoPi), {0, 0, 1}), {0, 0, 1}),
            0.0);
}

TEST(FrameBoundRatio, StableAcrossAmplitudes) {
  for (int d = 2; d <= 3; ++d) {
    const Grid g(d, d == 2 ? 32 : 16, kTwoPi);
    double lo = kInf, hi = 0.0;
    for (double eps : {0.02, 0.05, 0.1}) {
      const double r = diagnostics::frame_bound_ratio(generate_initial(bump(eps), g), {0, 0, 1});
      EXPECT_TRUE(std::isfinite(r));
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    EXPECT_LT((hi - lo) / lo, 0.2) << "d=" << d;
  }
}

TEST(FrameBoundRatio, RotationInvariant) {
  for (int d = 2; d <= 3; ++d) {
    const Grid g(d, d == 2 ? 32 : 16, kTwoPi);
    const Vec3 n = (1.0 / std::sqrt(3.0)) * Vec3{1, 1, 1};
    InitialDataSpec spec = bump(0.02);
    const double base = diagnostics::frame_bound_ratio(generate_initial(spec, g), spec.base);
    spec.base = rotate(spec.base, n, 0.4);
    spec.transverse = rotate(spec.transverse, n, 0.4);
    const double turned = diagnostics::frame_bound_ratio(generate_initial(spec, g), spec.base);
    EXPECT_NEAR(turned, base, 1e-8 * base) << "d=" << d;
  }
}

TEST(Diagnose, ConstantMapRow) {
  const Grid g(2, 16, kTwoPi);
  const auto row = diagnostics::diagnose(constant_map(g, {0, 0, 1}), 1.5);
  EXPECT_EQ(row.t, 1.5);
  EXPECT_EQ(row.energy, 0.0);
  EXPECT_EQ(row.l2_dist_q, 0.0);
  EXPECT_EQ(row.critical_norm, 0.0);
  EXPECT_EQ(row.unit_violation, 0.0);
  EXPECT_LT(row.div_a, 1e-15);
  EXPECT_LT(row.res_compatibility, 1e-15);
  EXPECT_LT(row.res_curvature, 1e-15);
  EXPECT_LT(row.res_psi0, 1e-15);
}

TEST(Diagnose, NoFrameGivesNaN) {
  const Grid g(2, 16, kTwoPi);
  const auto row = diagnostics::diagnose(generate_initial(bump(0.3, 0.5, tilted_transverse()), g), 0.0);
  EXPECT_GT(row.energy, 0.0);
  EXPECT_TRUE(std::isnan(row.div_a));
  EXPECT_TRUE(std::isnan(row.res_compatibility));
  EXPECT_TRUE(std::isnan(row.res_curvature));
  EXPECT_TRUE(std::isnan(row.res_psi0));
}

TEST(Diagnose, SuppliedPsiDrivesResiduals) {
  const Grid g(2, 32, kTwoPi);
  const SphereField s = generate_initial(bump(0.05, 0.8, tilted_transverse()), g);
  const auto frame_row = diagnostics::diagnose(s, 0.0);
  const auto psi_row = diagnostics::diagnose(s, 0.0, evolution::coulomb_psi(s));
  EXPECT_NEAR(psi_row.res_compatibility, frame_row.res_compatibility, 1e-8);
  EXPECT_EQ(psi_row.res_psi0, frame_row.res_psi0);
  const gauge::PsiFields junk = {random_field(g, 1), random_field(g, 2)};
  const auto junk_row = diagnostics::diagnose(s, 0.0, junk);
  EXPECT_GT(junk_row.res_curvature, 0.1);
  EXPECT_EQ(junk_row.energy, frame_row.energy);
}

TEST(Gronwall, IdenticalDataStayIdentical) {
  const Grid g(2, 16, kTwoPi);
  const SphereField s = generate_initial(bump(0.05, 0.8), g);
  const auto r = diagnostics::gronwall_probe(s, s, evolution::default_dt(g), 20);
  EXPECT_TRUE(r.identical);
  ASSERT_EQ(r.q_norms.size(), 21u);
  for (double q : r.q_norms) EXPECT_EQ(q, 0.0);
}

TEST(Gronwall, RateIndependentOfAmplitudeAndDirection) {
  const Grid g(2, 16, kTwoPi);
  const InitialDataSpec spec = bump(0.05, 0.5, tilted_transverse());
  const SphereField a = generate_initial(spec, g);
  const double dt = evolution::default_dt(g);
  auto rate = [&](double delta, double step) {
    InitialDataSpec other = spec;
    other.amplitude += delta;
    const auto r = diagnostics::gronwall_probe(a, generate_initial(other, g), step, 200, 10);
    EXPECT_FALSE(r.identical);
    EXPECT_EQ(r.times.size(), 21u);
    return r.rate;
  };
  const double r6 = rate(1e-6, dt), r7 = rate(1e-7, dt), back = rate(1e-6, -dt);
  ASSERT_NE(r6, 0.0);
  EXPECT_NEAR(r7, r6, 0.1 * std::abs(r6));
  EXPECT_NEAR(back, r6, 0.1 * std::abs(r6));
}

TEST(Gronwall, EnvelopeBoundsSamples) {
  const Grid g(2, 16, kTwoPi);
  const SphereField a = generate_initial(bump(0.05, 0.5), g);
  const SphereField b = generate_initial(bump(0.0501, 0.5), g);
  const auto r = diagnostics::gronwall_probe(a, b, evolution::default_dt(g), 50, 5);
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    EXPECT_LE(r.q_norms[i], r.q_norms[0] * std::exp(r.envelope_rate * r.times[i]) * (1.0 + 1e-12));
  }
}

SpaceTimeRecord record_of(const Grid& g, double dt, int slices,
                          const std::function<Complex(std::span<const double>, double)>& f) {
  SpaceTimeRecord r{g, dt, {}};
  for (int j = 0; j < slices; ++j) {
    r.slices.push_back(ScalarField::from_function(g, [&](auto x) { return f(x, j * dt); }));
  }
  return r;
}

TEST(DirectionalNorm, ZeroRecord) {
  const Grid g(2, 8, 1.0);
  const auto r = record_of(g, 0.1, 4, [](auto, double) { return Complex(0.0); });
  EXPECT_EQ(diagnostics::directional_norm(r, {0, 1}, 2.0, kInf), 0.0);
}

TEST(DirectionalNorm, FubiniForL2) {
  const Grid g(3, 8, 2.0);
  const double dt = 0.05;
  const auto r = record_of(g, dt, 6, [](auto x, double t) {
    return Complex(std::sin(x[0] + 2.0 * t), x[1] * x[2] - t);
  });
  double sum = 0.0;
  for (const auto& s : r.slices) sum += std::pow(spectral::l2_norm(s), 2) * dt;
  for (int axis = 0; axis < 3; ++axis) {
    EXPECT_NEAR(diagnostics::directional_norm(r, {axis, -1}, 2.0, 2.0), std::sqrt(sum), 1e-10);
  }
}

// f = g(x_1) h(x_2, t) along e_1: || g ||_{L^p} || h ||_{L^q}.
TEST(DirectionalNorm, SeparableQuadratureOracle) {
  const Grid grid(2, 16, 3.0);
  const double dt = 0.1;
  const int slices = 5;
  auto gfun = [](double x) { return 1.0 + std::sin(x); };
  auto hfun = [](double y, double t) { return std::cos(y) * std::exp(-t) + 0.2; };
  const auto r = record_of(grid, dt, slices, [&](auto x, double t) { return gfun(x[0]) * hfun(x[1], t); });
  const double h = grid.spacing();
  for (double p : {1.0, 2.0, kInf}) {
    for (double q : {1.0, 2.0, kInf}) {
      double gn = 0.0, hn = 0.0;
      for (int i = 0; i < grid.n(); ++i) {
        const double v = std::abs(gfun(i * h));
        gn = p == kInf ? std::max(gn, v) : gn + h * std::pow(v, p);
        for (int j = 0; j < slices; ++j) {
          const double w = std::abs(hfun(i * h, j * dt));
          hn = q == kInf ? std::max(hn, w) : hn + h * dt * std::pow(w, q);
        }
      }
      if (p != kInf) gn = std::pow(gn, 1.0 / p);
      if (q != kInf) hn = std::pow(hn, 1.0 / q);
      EXPECT_NEAR(diagnostics::directional_norm(r, {0, 1}, p, q), gn * hn, 1e-12 * gn * hn)
          << "p=" << p << " q=" << q;
    }
  }
}

TEST(DirectionalNorm, RejectsBadArguments) {
  const Grid g(2, 8, 1.0);
  const auto r = record_of(g, 0.1, 2, [](auto, double) { return Complex(1.0); });
  EXPECT_THROW(diagnostics::directional_norm(r, {0, 1}, 3.0, 2.0), std::invalid_argument);
  EXPECT_THROW(diagnostics::directional_norm(r, {2, 1}, 2.0, 2.0), std::invalid_argument);
  EXPECT_THROW(diagnostics::directional_norm(r, {0, 0}, 2.0, 2.0), std::invalid_argument);
}

SpaceTimeRecord free_wave(double amplitude) {
  const Grid g(2, 16, kTwoPi);
  return record_of(g, 0.04, 512, [&](auto x, double t) {
    return amplitude * std::polar(1.0, x[0] + x[1] - 2.0 * t);
  });
}

TEST(XkNorm, ZeroRecord) {
  const auto r = diagnostics::xk_norm(free_wave(0.0), 1);
  EXPECT_EQ(r.value, 0.0);
}

// The tapered free wave has mass L^2 T 3/8 and sits on tau = -|xi_0|^2.
TEST(XkNorm, FreeWaveConcentratesInFirstShell) {
  const auto rec = free_wave(1.0);
  const auto r = diagnostics::xk_norm(rec, 1);
  ASSERT_FALSE(r.shells.empty());
  double total = 0.0, high = 0.0;
  for (std::size_t j = 0; j < r.shells.size(); ++j) {
    total += r.shells[j] * r.shells[j];
    if (j >= 2) high += r.shells[j] * r.shells[j];
  }
  EXPECT_LT(high, 0.05 * total);
  const double mass = kTwoPi * kTwoPi * rec.slices.size() * rec.dt * 3.0 / 8.0;
  EXPECT_NEAR(r.shells[0] * r.shells[0], mass, 0.01 * mass);
  EXPECT_GE(r.value, r.shells[0]);
  EXPECT_LT(diagnostics::xk_norm(rec, 2).value, 1e-10 * r.value);
  EXPECT_THROW(diagnostics::xk_norm(rec, 4), std::invalid_argument);
}

TEST(XkNorm, OffShellWaveLeavesFirstShell) {
  const Grid g(2, 16, kTwoPi);
  const auto rec = record_of(g, 0.04, 512, [](auto x, double t) {
    return std::polar(1.0, x[0] + x[1] + 6.0 * t);
  });
  const auto r = diagnostics::xk_norm(rec, 1);
  ASSERT_GE(r.shells.size(), 4u);
  EXPECT_LT(r.shells[0], 0.01 * r.shells[3]);
}

TEST(XkNorm, RejectsShortOrCoarseRecords) {
  const Grid g(2, 16, kTwoPi);
  auto one = [](auto, double) { return Complex(1.0); };
  EXPECT_THROW(diagnostics::xk_norm(record_of(g, 0.05, 32, one), 1), std::invalid_argument);
  EXPECT_THROW(diagnostics::xk_norm(record_of(g, 0.5, 64, one), 1), std::invalid_argument);
  EXPECT_THROW(diagnostics::xk_norm(record_of(g, 0.05, 1, one), 1), std::invalid_argument);
}

}  // namespace
}  // namespace smap

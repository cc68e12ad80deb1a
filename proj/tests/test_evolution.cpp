#include <gtest/gtest.h>

#include <bit>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "smap/evolution.hpp"
#include "support.hpp"

namespace smap {
namespace {

using namespace testing;
using evolution::SimConfig;

SphereField evolve(SphereField s, double dt, int steps) {
  for (int k = 0; k < steps; ++k) s = evolution::step_rk4_projected(s, dt);
  return s;
}

gauge::PsiFields evolve_psi(gauge::PsiFields psi, double dt, int steps) {
  for (int k = 0; k < steps; ++k) psi = evolution::evolve_msm(psi, dt);
  return psi;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("smap_evolution_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

TEST(SmRhs, ConstantMapIsFixed) {
  const Grid g(3, 8, 1.0);
  const SphereField s(VectorField3::from_function(g, [](auto) { return Vec3{0, 0, 1}; }), {0, 0, 1});
  EXPECT_EQ(spectral::l2_norm(evolution::sm_rhs(s)), 0.0);
}

TEST(SmRhs, OrthogonalToS) {
  const Grid g(2, 32, kTwoPi);
  InitialDataSpec spec;
  spec.kind = InitialKind::BandLimitedRandom;
  spec.amplitude = 0.8;
  spec.mode_cutoff = 6;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    spec.seed = seed;
    const SphereField s = generate_initial(spec, g);
    const VectorField3 rhs = evolution::sm_rhs(s);
    ASSERT_GT(spectral::l2_norm(rhs), 1.0);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_LT(std::abs(dot(rhs[i], s[i])), 1e-12);
  }
}

// s x Laplace(s) - Q x Laplace(s - Q) = (s - Q) x Laplace(s - Q) = O(eps^2).
// Along a geodesic s - Q is parallel to U at first order, so the defect there
// is O(eps^3).
double linearization_slope(InitialDataSpec spec) {
  const Grid g(2, 32, kTwoPi);
  auto defect = [&](double eps) {
    spec.amplitude = eps;
    const SphereField s = generate_initial(spec, g);
    VectorField3 lin = s.values();
    for (std::size_t i = 0; i < g.size(); ++i) lin[i] -= s.base();
    lin = spectral::vector_apply(lin, spectral::laplacian);
    for (std::size_t i = 0; i < g.size(); ++i) lin[i] = cross(s.base(), lin[i]);
    return spectral::l2_norm(evolution::sm_rhs(s) - lin);
  };
  return std::log10(defect(1e-2) / defect(1e-3));
}

TEST(SmRhs, LinearizationSlope) {
  InitialDataSpec random;
  random.kind = InitialKind::BandLimitedRandom;
  EXPECT_NEAR(linearization_slope(random), 2.0, 0.05);
  EXPECT_NEAR(linearization_slope(bump(0.0, 0.8)), 3.0, 0.05);
}

TEST(StepRk4, ConstantMapExact) {
  const Grid g(2, 16, kTwoPi);
  const SphereField s(VectorField3::from_function(g, [](auto) { return Vec3{0, 0, 1}; }), {0, 0, 1});
  const SphereField t = evolution::step_rk4_projected(s, evolution::default_dt(g));
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(t[i], (Vec3{0, 0, 1}));
}

TEST(StepRk4, UnitDefectBeforeProjection) {
  const Grid g(2, 32, kTwoPi);
  SphereField s = generate_initial(bump(0.05, 0.5, tilted_transverse()), g);
  const double dt = evolution::default_dt(g);
  for (int k = 0; k < 50; ++k) {
    EXPECT_LE(unit_violation(evolution::step_rk4(s, dt)), 1e-6);
    s = evolution::step_rk4_projected(s, dt);
  }
}

TEST(StepRk4, RichardsonOrder) {
  const Grid g(2, 16, kTwoPi);
  const SphereField s0 = generate_initial(bump(0.05, 0.8, tilted_transverse()), g);
  const double t_end = 0.5;
  const SphereField ref = evolve(s0, t_end / 320, 320);
  const double e1 = spectral::l2_norm(evolve(s0, t_end / 40, 40).values() - ref.values());
  const double e2 = spectral::l2_norm(evolve(s0, t_end / 80, 80).values() - ref.values());
  EXPECT_NEAR(e1 / e2, 16.0, 3.2);
}

TEST(StepRk4, ReversibilityProbe) {
  const Grid g(2, 32, kTwoPi);
  const SphereField s0 = generate_initial(bump(0.05, 0.5, tilted_transverse()), g);
  const double dt = evolution::default_dt(g);
  const SphereField one = evolution::step_rk4_projected(s0, dt);
  const SphereField two = evolve(s0, 0.5 * dt, 2);
  const double truncation = spectral::l2_norm(one.values() - two.values()) * 16.0 / 15.0;
  const SphereField back = evolution::step_rk4_projected(one, -dt);
  const double round_trip = spectral::l2_norm(back.values() - s0.values());
  ASSERT_GT(truncation, 0.0);
  EXPECT_LE(round_trip, 10.0 * truncation);
}

// A run on (n, L/2) with step dt/4 from s0(2x) reproduces the run on (n, L)
// at matched steps: s_2(x, t) = s(2x, 4t).
TEST(StepRk4, ParabolicScaling) {
  const Grid big(2, 16, kTwoPi), small(2, 16, kPi);
  const InitialDataSpec spec = bump(0.05, 0.8, tilted_transverse());
  SphereField a = generate_initial(spec, big);
  SphereField b = generate_initial(spec, small);
  const double dt = evolution::default_dt(big);
  ASSERT_DOUBLE_EQ(evolution::default_dt(small), dt / 4.0);
  for (int k = 0; k < 20; ++k) {
    const SphereField half = evolve(a, 0.5 * dt, 2);
    a = evolution::step_rk4_projected(a, dt);
    b = evolution::step_rk4_projected(b, dt / 4.0);
    const double truncation = max_diff(a.values(), half.values());
    EXPECT_LE(max_diff(a.values(), b.values()), 10.0 * truncation) << "step " << k;
  }
}

TEST(EvolveMsm, ZeroStaysZero) {
  const Grid g(2, 16, kTwoPi);
  const gauge::PsiFields zero(2, ScalarField(g));
  for (const auto& p : evolution::evolve_msm(zero, 0.01)) EXPECT_EQ(p.max_abs(), 0.0);
}

TEST(EvolveMsm, FrozenFreePhase) {
  const Grid g(2, 16, kTwoPi);
  const double dt = 0.013;
  const auto mode = ScalarField::from_function(g, [](auto x) { return std::polar(1.0, x[0]); });
  const gauge::PsiFields out = evolution::evolve_msm({mode, ScalarField(g)}, dt, {.freeze_nonlinearity = true});
  const ScalarField expect = std::polar(1.0, -dt) * mode;
  EXPECT_LT(max_diff(out[0], expect), 1e-14);
  EXPECT_LT(out[1].max_abs(), 1e-15);
}

TEST(EvolveMsm, FrozenMatchesManySteps) {
  const Grid g(2, 16, kTwoPi);
  const ScalarField f = random_field(g, 3, 4);
  gauge::PsiFields psi = {f, f};
  for (int k = 0; k < 10; ++k) psi = evolution::evolve_msm(psi, 0.1, {.freeze_nonlinearity = true});
  const auto expect = spectral::fourier_multiplier(f, [](std::span<const double> xi) {
    double xi2 = 0.0;
    for (double x : xi) xi2 += x * x;
    return std::exp(Complex(0.0, -xi2));
  });
  EXPECT_LT(max_diff(psi[0], expect), 1e-12);
}

TEST(EvolveMsm, RichardsonOrder) {
  const Grid g(2, 16, kTwoPi);
  const SphereField s0 = generate_initial(bump(0.05, 0.8, tilted_transverse()), g);
  const gauge::PsiFields p0 = evolution::coulomb_psi(s0);
  const double t_end = 0.5;
  const auto ref = evolve_psi(p0, t_end / 320, 320);
  const double e1 = evolution::relative_l2(evolve_psi(p0, t_end / 40, 40), ref);
  const double e2 = evolution::relative_l2(evolve_psi(p0, t_end / 80, 80), ref);
  EXPECT_NEAR(e1 / e2, 16.0, 3.2);
}

TEST(EvolveMsm, TracksFrameOfMapFlow) {
  const Grid g(2, 32, kTwoPi);
  SphereField s = generate_initial(bump(0.02, 0.8, tilted_transverse()), g);
  gauge::PsiFields psi = evolution::coulomb_psi(s);
  const double dt = evolution::default_dt(g);
  for (int k = 0; k < 30; ++k) {
    s = evolution::step_rk4_projected(s, dt);
    psi = evolution::evolve_msm(psi, dt);
  }
  const gauge::PsiFields frame = evolution::coulomb_psi(s);
  EXPECT_LT(evolution::relative_l2(evolution::align_phase(psi, frame), frame), 1e-5);
}

TEST(AlignPhase, RemovesConstantPhase) {
  const Grid g(2, 16, 1.0);
  const gauge::PsiFields ref = {random_field(g, 11), random_field(g, 12)};
  gauge::PsiFields rotated = ref;
  for (auto& f : rotated) f *= std::polar(1.0, 2.1);
  EXPECT_GT(evolution::relative_l2(rotated, ref), 1.0);
  EXPECT_LT(evolution::relative_l2(evolution::align_phase(rotated, ref), ref), 1e-14);
}

TEST(Validate, RejectsBadConfigs) {
  SimConfig c;
  EXPECT_NO_THROW(evolution::validate(c));
  SimConfig big_dt = c;
  big_dt.dt = 3.0 / Grid(c.dim, c.n, c.length).max_wavenumber_norm2();
  EXPECT_THROW(evolution::validate(big_dt), std::invalid_argument);
  big_dt.dt = -big_dt.dt;
  EXPECT_THROW(evolution::validate(big_dt), std::invalid_argument);
  SimConfig bad = c;
  bad.steps = -1;
  EXPECT_THROW(evolution::validate(bad), std::invalid_argument);
  bad = c;
  bad.cadence = 0;
  EXPECT_THROW(evolution::validate(bad), std::invalid_argument);
  bad = c;
  bad.n = 9;
  EXPECT_THROW(evolution::validate(bad), std::invalid_argument);
  EXPECT_THROW(evolution::parse_integrator("euler"), std::invalid_argument);
  EXPECT_EQ(evolution::parse_integrator("strang-msm"), evolution::IntegratorKind::StrangMsm);
}

TEST(Run, ZeroStepsReturnsInitialSlice) {
  SimConfig c;
  c.n = 16;
  c.steps = 0;
  c.snapshot_every = 1;
  const auto record = evolution::run(c);
  ASSERT_EQ(record.rows.size(), 1u);
  ASSERT_EQ(record.snapshots.size(), 1u);
  EXPECT_EQ(record.rows[0].t, 0.0);
  const SphereField s0 = generate_initial(c.initial, Grid(c.dim, c.n, c.length));
  EXPECT_EQ(max_diff(record.snapshots[0].values(), s0.values()), 0.0);
  EXPECT_FALSE(record.aborted.has_value());
}

TEST(Run, CadenceAndTimes) {
  SimConfig c;
  c.n = 16;
  c.steps = 25;
  c.cadence = 10;
  c.snapshot_every = 5;
  const auto record = evolution::run(c);
  ASSERT_EQ(record.rows.size(), 3u);
  ASSERT_EQ(record.snapshots.size(), 6u);
  const double dt = evolution::default_dt(Grid(c.dim, c.n, c.length));
  EXPECT_DOUBLE_EQ(record.rows[2].t, 20 * dt);
  for (std::size_t i = 1; i < record.snapshot_times.size(); ++i) {
    EXPECT_GT(record.snapshot_times[i], record.snapshot_times[i - 1]);
  }
}

TEST(Run, DeterministicOutput) {
  SimConfig c;
  c.n = 16;
  c.steps = 20;
  c.cadence = 5;
  c.initial.kind = InitialKind::BandLimitedRandom;
  c.initial.amplitude = 0.02;
  c.initial.seed = 42;
  c.output_dir = scratch_dir("a");
  const auto first = evolution::run(c);
  const auto csv_a = read_file(c.output_dir / "diagnostics.csv");
  c.output_dir = scratch_dir("b");
  const auto second = evolution::run(c);
  const auto csv_b = read_file(c.output_dir / "diagnostics.csv");
  EXPECT_FALSE(csv_a.empty());
  EXPECT_EQ(csv_a.find("nan"), std::string::npos);
  EXPECT_EQ(csv_a, csv_b);
  ASSERT_EQ(first.rows.size(), second.rows.size());
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(first.rows[i].energy),
              std::bit_cast<std::uint64_t>(second.rows[i].energy));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(first.rows[i].res_psi0),
              std::bit_cast<std::uint64_t>(second.rows[i].res_psi0));
  }
  c.initial.seed = 43;
  c.output_dir.clear();
  EXPECT_NE(evolution::run(c).rows[0].energy, first.rows[0].energy);
}

TEST(Run, MsmIntegratorKeepsResidualsSmall) {
  SimConfig c;
  c.n = 32;
  c.steps = 20;
  c.cadence = 10;
  c.integrator = evolution::IntegratorKind::StrangMsm;
  c.initial = bump(0.02, 0.8, tilted_transverse());
  const auto record = evolution::run(c);
  ASSERT_EQ(record.rows.size(), 3u);
  for (const auto& row : record.rows) {
    EXPECT_LT(row.res_compatibility, 1e-6);
    EXPECT_LT(row.res_curvature, 1e-6);
    EXPECT_LT(row.div_a, 1e-10);
  }
}

}  // namespace
}  // namespace smap

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "smap/diagnostics.hpp"
#include "smap/gauge.hpp"
#include "smap/geometry.hpp"
#include "smap/initial_data.hpp"

namespace smap::evolution {

/// rk4-projected: classical RK4 on s' = s x Laplace(s), then s / |s|.
/// strang-msm: the same s evolution plus psi evolved by the integrating-factor
/// scheme of evolve_msm; psi feeds the compatibility and curvature columns.
enum class IntegratorKind { Rk4Projected, StrangMsm };

std::string to_string(IntegratorKind kind);
IntegratorKind parse_integrator(const std::string& text);

/// Upper bound on dt |xi_max|^2 (RK4 is stable on the imaginary axis up to
/// about 2.83).
inline constexpr double kStabilityLimit = 2.8;

struct SimConfig {
  int dim = 2;
  int n = 32;
  double length = 6.283185307179586;
  /// 0 selects default_dt.
  double dt = 0.0;
  int steps = 100;
  IntegratorKind integrator = IntegratorKind::Rk4Projected;
  InitialDataSpec initial{};
  /// Diagnostics every `cadence` steps (step 0 included).
  int cadence = 10;
  /// Snapshot every `snapshot_every` steps; 0 disables snapshots.
  int snapshot_every = 0;
  /// Empty: nothing is written.
  std::filesystem::path output_dir{};
};

/// Checks ranges and the stability bound; throws std::invalid_argument.
void validate(const SimConfig& config);

struct TrajectoryRecord {
  std::vector<double> snapshot_times;
  std::vector<SphereField> snapshots;
  std::vector<diagnostics::DiagnosticsRow> rows;
  /// Set when the run stopped early on BlowupSuspected.
  std::optional<std::string> aborted;
};

/// 2 / |xi_max|^2.
double default_dt(const Grid& grid);

/// s x Laplace(s), pointwise orthogonal to s.
VectorField3 sm_rhs(const SphereField& s);
/// Same on a field that need not be unit length (RK4 stages).
VectorField3 sm_rhs(const VectorField3& s);

/// One classical RK4 step, before projection.
VectorField3 step_rk4(const SphereField& s, double dt);
/// step_rk4 followed by renormalize. Propagates BlowupSuspected.
SphereField step_rk4_projected(const SphereField& s, double dt);

struct MsmOptions {
  /// Drop N_m: the step reduces to the free propagator exp(-i dt |xi|^2).
  bool freeze_nonlinearity = false;
};

/// One integrating-factor RK4 step of (i d_t + Laplace) psi_m = N_m(psi):
/// the free part exp(-i dt |xi|^2) is applied exactly, N by RK4.
gauge::PsiFields evolve_msm(const gauge::PsiFields& psi, double dt, MsmOptions options = {});

/// psi of the Coulomb-fixed projection frame of s.
gauge::PsiFields coulomb_psi(const SphereField& s);

/// Multiplies `psi` by the constant phase that aligns the largest-magnitude
/// Fourier mode of reference[0] with the same mode of psi[0].
gauge::PsiFields align_phase(const gauge::PsiFields& psi, const gauge::PsiFields& reference);

/// sqrt(sum_m ||a_m - b_m||^2) / sqrt(sum_m ||b_m||^2).
double relative_l2(const gauge::PsiFields& a, const gauge::PsiFields& b);

/// Runs the configured simulation. Deterministic. Writes diagnostics.csv and
/// snapshot files under output_dir when it is set; on BlowupSuspected the
/// partial record is persisted and returned with `aborted` set.
TrajectoryRecord run(const SimConfig& config);

}  // namespace smap::evolution

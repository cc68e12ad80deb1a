#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "smap/gauge.hpp"
#include "smap/geometry.hpp"

namespace smap::diagnostics {

/// One row of the diagnostics table. Residual and div_A entries are NaN
/// when no projection frame exists for the slice.
struct DiagnosticsRow {
  double t = 0.0;
  double energy = 0.0;
  double l2_dist_q = 0.0;
  double critical_norm = 0.0;
  double unit_violation = 0.0;
  double div_a = 0.0;
  double res_compatibility = 0.0;
  double res_curvature = 0.0;
  double res_psi0 = 0.0;
};

/// sum_l || d_l s ||^2_{L^2}, by Parseval with the symbol of d_l.
double energy(const SphereField& s);
/// || s - Q ||_{L^2}.
double l2_distance_q(const SphereField& s, const Vec3& q);
/// || s - Q ||_{H-dot^{d/2}}, componentwise root-sum-square.
double critical_norm(const SphereField& s, const Vec3& q);

/// max_m || psi_m(0) ||_{H-dot^{(d-2)/2}} / || s0 - Q ||_{H-dot^{d/2}} for the
/// Coulomb-fixed projection frame; 0 when s0 == Q.
double frame_bound_ratio(const SphereField& s0, const Vec3& q);

/// Full row for one time slice. Gauge quantities use the Coulomb-fixed
/// projection frame with the default transverse direction; psi, when given,
/// replaces the frame-derived psi in the compatibility and curvature
/// residuals (with A from a_from_psi).
DiagnosticsRow diagnose(const SphereField& s, double t,
                        const std::optional<gauge::PsiFields>& psi = std::nullopt);

struct GronwallResult {
  std::vector<double> times;
  /// || q(t) ||_{H^1} with q = s_b - s_a.
  std::vector<double> q_norms;
  /// Least-squares slope of log || q ||_{H^1} against |t|.
  double rate = 0.0;
  /// max_t log(|| q(t) || / || q(0) ||) / |t|: the smallest C with
  /// || q(t) || <= || q(0) || exp(C |t|) on the samples.
  double envelope_rate = 0.0;
  /// Both trajectories agreed bitwise at every sample.
  bool identical = false;
};

/// Evolves both data with the projected RK4 step of size dt (negative dt
/// runs backwards) for `steps` steps, sampling || q ||_{H^1} every
/// `sample_every` steps.
GronwallResult gronwall_probe(const SphereField& a, const SphereField& b, double dt, int steps,
                              int sample_every = 1);

/// Uniformly sampled space-time record of a scalar quantity.
struct SpaceTimeRecord {
  Grid grid;
  double dt;
  std::vector<ScalarField> slices;
};

/// Signed coordinate direction +-e_axis.
struct Direction {
  int axis = 0;
  int sign = +1;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// || f ||_{L^{p,q}_e}: q-norm over the hyperplane orthogonal to e and over
/// time, then p-norm along e. p, q in {1, 2, inf}. Riemann sums with cell
/// weights h^(d-1) dt and h.
double directional_norm(const SpaceTimeRecord& u, Direction e, double p, double q);

struct XkNorm {
  double value = 0.0;
  /// || eta_j(tau + |xi|^2) f ||_{L^2} for j = 0, 1, ...
  std::vector<double> shells;
};

/// sum_j 2^{j/2} || eta_j(tau + |xi|^2) f ||_{L^2} over the frequency annulus
/// |xi| in [2^{k-1}, 2^{k+1}], after a periodic Hann taper in time. Throws
/// std::invalid_argument when the record is too short (temporal frequency
/// spacing above 1/2) or too coarsely sampled (temporal Nyquist below
/// max |xi|^2 + 8/5 on the annulus).
XkNorm xk_norm(const SpaceTimeRecord& u, int k);

}  // namespace smap::diagnostics

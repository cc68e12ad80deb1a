#include "smap/evolution.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "smap/csv.hpp"
#include "smap/errors.hpp"
#include "smap/fft.hpp"
#include "smap/snapshot.hpp"
#include "smap/spectral.hpp"

namespace smap::evolution {
namespace {

constexpr Complex kI(0.0, 1.0);

using gauge::PsiFields;

// exp(-i h |xi|^2) applied to every field.
PsiFields free_propagate(const PsiFields& psi, double h) {
  PsiFields out;
  out.reserve(psi.size());
  for (const auto& p : psi) {
    const auto xi2 = p.grid().wavenumber_norm2();
    auto c = spectral::coefficients(p);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::exp(Complex(0.0, -h * xi2[i]));
    out.push_back(spectral::from_coefficients(p.grid(), std::move(c)));
  }
  return out;
}

// -i N(psi), the nonlinear part of d_t psi.
PsiFields nonlinear_rate(const PsiFields& psi, const MsmOptions& options) {
  if (options.freeze_nonlinearity) {
    PsiFields zero;
    for (const auto& p : psi) zero.emplace_back(p.grid());
    return zero;
  }
  PsiFields n = gauge::msm_nonlinearity(psi);
  for (auto& f : n) f *= -kI;
  return n;
}

// sum_k c_k * fields_k, all of equal shape.
PsiFields combine(std::initializer_list<std::pair<Complex, const PsiFields*>> terms) {
  const PsiFields& first = *terms.begin()->second;
  PsiFields out;
  for (const auto& f : first) out.emplace_back(f.grid());
  for (const auto& [coef, fields] : terms) {
    for (std::size_t m = 0; m < out.size(); ++m) {
      auto dst = out[m].values();
      auto src = (*fields)[m].values();
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += coef * src[i];
    }
  }
  return out;
}

std::filesystem::path snapshot_path(const std::filesystem::path& dir, int step) {
  char name[64];
  std::snprintf(name, sizeof name, "snapshot_%08d.bin", step);
  return dir / name;
}

}  // namespace

std::string to_string(IntegratorKind kind) {
  return kind == IntegratorKind::Rk4Projected ? "rk4-projected" : "strang-msm";
}

IntegratorKind parse_integrator(const std::string& text) {
  if (text == "rk4-projected") return IntegratorKind::Rk4Projected;
  if (text == "strang-msm") return IntegratorKind::StrangMsm;
  throw std::invalid_argument("unknown integrator '" + text +
                              "' (expected rk4-projected or strang-msm)");
}

double default_dt(const Grid& grid) { return 2.0 / grid.max_wavenumber_norm2(); }

void validate(const SimConfig& config) {
  const Grid grid(config.dim, config.n, config.length);
  if (config.steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (config.cadence < 1) throw std::invalid_argument("cadence must be >= 1");
  if (config.snapshot_every < 0) throw std::invalid_argument("snapshot_every must be >= 0");
  const double dt = config.dt == 0.0 ? default_dt(grid) : config.dt;
  if (!std::isfinite(dt)) throw std::invalid_argument("dt must be finite");
  const double number = std::abs(dt) * grid.max_wavenumber_norm2();
  if (number > kStabilityLimit) {
    std::ostringstream os;
    os << "dt |xi_max|^2 = " << number << " exceeds the RK4 stability bound " << kStabilityLimit;
    throw std::invalid_argument(os.str());
  }
}

VectorField3 sm_rhs(const VectorField3& s) {
  const VectorField3 lap = spectral::vector_apply(s, spectral::laplacian);
  return cross(s, lap);
}

VectorField3 sm_rhs(const SphereField& s) { return sm_rhs(s.values()); }

VectorField3 step_rk4(const SphereField& s, double dt) {
  const VectorField3& s0 = s.values();
  const VectorField3 k1 = sm_rhs(s0);
  const VectorField3 k2 = sm_rhs(VectorField3(s0).axpy(0.5 * dt, k1));
  const VectorField3 k3 = sm_rhs(VectorField3(s0).axpy(0.5 * dt, k2));
  const VectorField3 k4 = sm_rhs(VectorField3(s0).axpy(dt, k3));
  VectorField3 out(s0);
  out.axpy(dt / 6.0, k1).axpy(dt / 3.0, k2).axpy(dt / 3.0, k3).axpy(dt / 6.0, k4);
  return out;
}

SphereField step_rk4_projected(const SphereField& s, double dt) {
  return renormalize(step_rk4(s, dt), s.base());
}

PsiFields evolve_msm(const PsiFields& psi, double dt, MsmOptions options) {
  if (psi.empty()) throw std::invalid_argument("evolve_msm: no fields");
  // Lawson RK4, E(h) = exp(-i h |xi|^2):
  //   a = E(h/2)(psi + h/2 k1), b = E(h/2) psi + h/2 k2, c = E(h) psi + h E(h/2) k3
  //   psi' = E(h) psi + h/6 (E(h) k1 + 2 E(h/2)(k2 + k3)) + h/6 k4
  const double h = dt;
  const PsiFields e_half = free_propagate(psi, 0.5 * h);
  const PsiFields e_full = free_propagate(psi, h);

  const PsiFields k1 = nonlinear_rate(psi, options);
  const PsiFields a = free_propagate(combine({{1.0, &psi}, {0.5 * h, &k1}}), 0.5 * h);
  const PsiFields k2 = nonlinear_rate(a, options);
  const PsiFields b = combine({{1.0, &e_half}, {0.5 * h, &k2}});
  const PsiFields k3 = nonlinear_rate(b, options);
  const PsiFields k3_half = free_propagate(k3, 0.5 * h);
  const PsiFields c = combine({{1.0, &e_full}, {h, &k3_half}});
  const PsiFields k4 = nonlinear_rate(c, options);

  const PsiFields k1_full = free_propagate(k1, h);
  const PsiFields k23 = combine({{1.0, &k2}, {1.0, &k3}});
  const PsiFields k23_half = free_propagate(k23, 0.5 * h);
  return combine({{1.0, &e_full}, {h / 6.0, &k1_full}, {h / 3.0, &k23_half}, {h / 6.0, &k4}});
}

PsiFields coulomb_psi(const SphereField& s) {
  return gauge::derive_psi(coulomb_fix(projection_frame(s)).frame);
}

PsiFields align_phase(const PsiFields& psi, const PsiFields& reference) {
  const auto cr = spectral::coefficients(reference.front());
  const auto cp = spectral::coefficients(psi.front());
  std::size_t peak = 0;
  for (std::size_t i = 1; i < cr.size(); ++i) {
    if (std::abs(cr[i]) > std::abs(cr[peak])) peak = i;
  }
  Complex phase = 1.0;
  if (std::abs(cp[peak]) > 0.0 && std::abs(cr[peak]) > 0.0) {
    const Complex ratio = cr[peak] / cp[peak];
    phase = ratio / std::abs(ratio);
  }
  PsiFields out = psi;
  for (auto& f : out) f *= phase;
  return out;
}

double relative_l2(const PsiFields& a, const PsiFields& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    num += std::pow(spectral::l2_norm(a[m] - b[m]), 2);
    den += std::pow(spectral::l2_norm(b[m]), 2);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

TrajectoryRecord run(const SimConfig& config) {
  validate(config);
  const Grid grid(config.dim, config.n, config.length);
  const double dt = config.dt == 0.0 ? default_dt(grid) : config.dt;
  const bool persist = !config.output_dir.empty();
  if (persist) std::filesystem::create_directories(config.output_dir);

  TrajectoryRecord record;
  SphereField s = generate_initial(config.initial, grid);
  std::optional<PsiFields> psi;
  if (config.integrator == IntegratorKind::StrangMsm) psi = coulomb_psi(s);

  auto observe = [&](int step) {
    const double t = step * dt;
    if (step % config.cadence == 0) record.rows.push_back(diagnostics::diagnose(s, t, psi));
    if (config.snapshot_every > 0 && step % config.snapshot_every == 0) {
      record.snapshot_times.push_back(t);
      record.snapshots.push_back(s);
      if (persist) snapshot::save(s, t, snapshot_path(config.output_dir, step));
    }
  };

  observe(0);
  for (int step = 1; step <= config.steps; ++step) {
    try {
      s = step_rk4_projected(s, dt);
    } catch (const BlowupSuspected& e) {
      std::ostringstream os;
      os << "step " << step << ": " << e.what();
      record.aborted = os.str();
      break;
    }
    if (psi) psi = evolve_msm(*psi, dt);
    observe(step);
  }

  if (persist) csv::emit_diagnostics_csv(record.rows, config.output_dir / "diagnostics.csv");
  return record;
}

}  // namespace smap::evolution

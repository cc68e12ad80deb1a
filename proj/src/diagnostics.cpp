#include "smap/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "smap/errors.hpp"
#include "smap/evolution.hpp"
#include "smap/fft.hpp"
#include "smap/spectral.hpp"

namespace smap::diagnostics {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

VectorField3 minus_base(const SphereField& s, const Vec3& q) {
  VectorField3 out = s.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= q;
  return out;
}

void check_exponent(double p) {
  if (p != 1.0 && p != 2.0 && p != kInf) {
    throw std::invalid_argument("norm exponents must be 1, 2 or inf");
  }
}

// Weighted l^p accumulator.
struct Accumulator {
  double p;
  double value = 0.0;
  void add(double x, double weight) {
    if (p == kInf) {
      value = std::max(value, x);
    } else if (p == 1.0) {
      value += weight * x;
    } else {
      value += weight * x * x;
    }
  }
  double result() const { return p == 2.0 ? std::sqrt(value) : value; }
};

void check_record(const SpaceTimeRecord& u) {
  for (const auto& slice : u.slices) require_same_grid(u.grid, slice.grid(), "space-time record");
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den > 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

}  // namespace

double energy(const SphereField& s) {
  const Grid& g = s.grid();
  std::vector<double> weight(g.size(), 0.0);
  for (int l = 0; l < g.dim(); ++l) {
    const auto xi = g.odd_wavenumbers(l);
    for (std::size_t i = 0; i < weight.size(); ++i) weight[i] += xi[i] * xi[i];
  }
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) {
    const auto coef = spectral::coefficients(s.values().component(c));
    for (std::size_t i = 0; i < coef.size(); ++i) sum += weight[i] * std::norm(coef[i]);
  }
  const double n = static_cast<double>(g.size());
  return sum * g.volume() / (n * n);
}

double l2_distance_q(const SphereField& s, const Vec3& q) {
  return spectral::l2_norm(minus_base(s, q));
}

double critical_norm(const SphereField& s, const Vec3& q) {
  return spectral::sobolev_norm(minus_base(s, q), 0.5 * s.grid().dim(), true);
}

double frame_bound_ratio(const SphereField& s0, const Vec3& q) {
  const double den = critical_norm(s0, q);
  if (den == 0.0) return 0.0;
  const auto psi = evolution::coulomb_psi(s0);
  const double sigma = 0.5 * (s0.grid().dim() - 2);
  double num = 0.0;
  for (const auto& p : psi) num = std::max(num, spectral::sobolev_norm(p, sigma, true));
  return num / den;
}

DiagnosticsRow diagnose(const SphereField& s, double t,
                        const std::optional<gauge::PsiFields>& psi) {
  DiagnosticsRow row;
  row.t = t;
  row.energy = energy(s);
  row.l2_dist_q = l2_distance_q(s, s.base());
  row.critical_norm = critical_norm(s, s.base());
  row.unit_violation = unit_violation(s.values());
  try {
    const CoulombGauge fixed = coulomb_fix(projection_frame(s));
    const gauge::PsiFields frame_psi = gauge::derive_psi(fixed.frame);
    row.div_a = spectral::l2_norm(divergence(fixed.connection));
    row.res_psi0 = gauge::residual_psi0(fixed.frame, frame_psi, fixed.connection);
    if (psi) {
      const Connection a = gauge::a_from_psi(*psi);
      row.res_compatibility = gauge::residual_compatibility(*psi, a);
      row.res_curvature = gauge::residual_curvature(*psi, a);
    } else {
      row.res_compatibility = gauge::residual_compatibility(frame_psi, fixed.connection);
      row.res_curvature = gauge::residual_curvature(frame_psi, fixed.connection);
    }
  } catch (const FrameDegenerate&) {
    row.div_a = row.res_compatibility = row.res_curvature = row.res_psi0 = kNaN;
  }
  return row;
}

GronwallResult gronwall_probe(const SphereField& a, const SphereField& b, double dt, int steps,
                              int sample_every) {
  require_same_grid(a.grid(), b.grid(), "gronwall_probe");
  if (steps < 1 || sample_every < 1) throw std::invalid_argument("gronwall_probe: steps >= 1");
  GronwallResult result;
  result.identical = true;
  SphereField sa = a;
  SphereField sb = b;
  auto sample = [&](int step) {
    const VectorField3 q = sb.values() - sa.values();
    result.times.push_back(step * dt);
    result.q_norms.push_back(spectral::sobolev_norm(q, 1.0, false));
    for (std::size_t i = 0; i < q.size() && result.identical; ++i) {
      result.identical = sa[i] == sb[i];
    }
  };
  sample(0);
  for (int step = 1; step <= steps; ++step) {
    sa = evolution::step_rk4_projected(sa, dt);
    sb = evolution::step_rk4_projected(sb, dt);
    if (step % sample_every == 0) sample(step);
  }

  const double q0 = result.q_norms.front();
  if (q0 <= 0.0) return result;
  std::vector<double> x, y;
  double envelope = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < result.times.size(); ++i) {
    if (result.q_norms[i] <= 0.0) continue;
    const double at = std::abs(result.times[i]);
    x.push_back(at);
    y.push_back(std::log(result.q_norms[i]));
    if (at > 0.0) envelope = std::max(envelope, std::log(result.q_norms[i] / q0) / at);
  }
  result.rate = fit_slope(x, y);
  result.envelope_rate = std::isfinite(envelope) ? envelope : 0.0;
  return result;
}

double directional_norm(const SpaceTimeRecord& u, Direction e, double p, double q) {
  check_record(u);
  u.grid.check_axis(e.axis);
  if (e.sign != 1 && e.sign != -1) throw std::invalid_argument("direction sign must be +-1");
  check_exponent(p);
  check_exponent(q);
  const Grid& grid = u.grid;
  const double h = grid.spacing();
  const double inner_weight = std::pow(h, grid.dim() - 1) * u.dt;

  std::vector<Accumulator> inner(grid.n(), Accumulator{q});
  for (const auto& slice : u.slices) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      inner[grid.index(i)[e.axis]].add(std::abs(slice[i]), inner_weight);
    }
  }
  Accumulator outer{p};
  for (const auto& acc : inner) outer.add(acc.result(), h);
  return outer.result();
}

XkNorm xk_norm(const SpaceTimeRecord& u, int k) {
  check_record(u);
  const Grid& grid = u.grid;
  const std::size_t m_count = u.slices.size();
  if (m_count < 2 || !(u.dt > 0.0)) throw std::invalid_argument("xk_norm: record too short");
  const double dtau = 2.0 * std::numbers::pi / (m_count * u.dt);
  if (dtau > 0.5) {
    throw std::invalid_argument("xk_norm: record too short for the modulation shells");
  }

  const double lo = std::ldexp(1.0, k - 1);
  const double hi = std::ldexp(1.0, k + 1);
  const auto xi2 = grid.wavenumber_norm2();
  std::vector<std::size_t> annulus;
  double max_xi2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = std::sqrt(xi2[i]);
    if (r >= lo && r <= hi) {
      annulus.push_back(i);
      max_xi2 = std::max(max_xi2, xi2[i]);
    }
  }
  if (std::numbers::pi / u.dt < max_xi2 + 1.6) {
    throw std::invalid_argument("xk_norm: time step too coarse for the annulus");
  }

  std::vector<std::vector<Complex>> spatial;
  spatial.reserve(m_count);
  for (std::size_t j = 0; j < m_count; ++j) {
    const double taper = std::pow(std::sin(std::numbers::pi * j / m_count), 2);
    auto c = spectral::coefficients(u.slices[j]);
    for (auto& v : c) v *= taper;
    spatial.push_back(std::move(c));
  }

  XkNorm out;
  const double mass_weight = grid.cell_volume() * u.dt / (grid.size() * m_count);
  std::vector<Complex> series(m_count);
  for (std::size_t i : annulus) {
    for (std::size_t j = 0; j < m_count; ++j) series[j] = spatial[j][i];
    fft::forward_1d(series);
    for (std::size_t m = 0; m < m_count; ++m) {
      const long mode = m < (m_count + 1) / 2 ? static_cast<long>(m)
                                               : static_cast<long>(m) - static_cast<long>(m_count);
      const double mu = mode * dtau + xi2[i];
      const double mass = std::norm(series[m]) * mass_weight;
      if (mass == 0.0) continue;
      for (int j = 0;; ++j) {
        if (j > 0 && std::abs(mu) < 1.25 * std::ldexp(1.0, j - 1)) break;
        const double w = spectral::eta_shell(mu, j);
        if (w != 0.0) {
          if (out.shells.size() <= static_cast<std::size_t>(j)) out.shells.resize(j + 1, 0.0);
          out.shells[j] += w * w * mass;
        }
      }
    }
  }
  for (std::size_t j = 0; j < out.shells.size(); ++j) {
    out.shells[j] = std::sqrt(out.shells[j]);
    out.value += std::sqrt(std::ldexp(1.0, static_cast<int>(j))) * out.shells[j];
  }
  return out;
}

}  // namespace smap::diagnostics

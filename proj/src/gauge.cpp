#include "smap/gauge.hpp"

#include <stdexcept>

#include "smap/evolution.hpp"
#include "smap/spectral.hpp"

namespace smap::gauge {
namespace {

constexpr Complex kI(0.0, 1.0);

void require_psi(const PsiFields& psi, const char* what) {
  if (psi.empty() || static_cast<int>(psi.size()) != psi.front().grid().dim()) {
    throw std::invalid_argument(std::string(what) + ": need one psi field per axis");
  }
  for (const auto& p : psi) require_same_grid(psi.front().grid(), p.grid(), what);
}

ScalarField frame_coordinate(const VectorField3& u, const Frame& frame) {
  ScalarField out(frame.grid());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = Complex(dot(u[i], frame.v()[i]), dot(u[i], frame.w()[i]));
  }
  return out;
}

PsiFields truncated(const PsiFields& psi) {
  PsiFields out;
  out.reserve(psi.size());
  for (const auto& p : psi) out.push_back(spectral::dealias(p));
  return out;
}

// Pointwise f(a_i, b_i) of two already-truncated fields, truncated again.
template <class Op>
ScalarField truncated_pointwise(const ScalarField& a, const ScalarField& b, Op&& op) {
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
  return spectral::dealias(out);
}

}  // namespace

PsiFields derive_psi(const Frame& frame) {
  const Grid& grid = frame.grid();
  PsiFields psi;
  psi.reserve(grid.dim());
  for (int m = 0; m < grid.dim(); ++m) {
    const VectorField3 ds = spectral::vector_apply(
        frame.s().values(), [m](const ScalarField& f) { return spectral::partial_derivative(f, m); });
    psi.push_back(frame_coordinate(ds, frame));
  }
  return psi;
}

ScalarField derive_psi0(const Frame& frame) {
  return frame_coordinate(evolution::sm_rhs(frame.s()), frame);
}

Connection a_from_psi(const PsiFields& psi_in) {
  require_psi(psi_in, "a_from_psi");
  const PsiFields psi = truncated(psi_in);
  const Grid& grid = psi.front().grid();
  const int d = grid.dim();

  // Coefficients of Im(psi_m conj(psi_l)) for m < l; the (l, m) entry is the negative.
  std::vector<std::vector<std::vector<Complex>>> q(d, std::vector<std::vector<Complex>>(d));
  for (int m = 0; m < d; ++m) {
    for (int l = m + 1; l < d; ++l) {
      const ScalarField im = truncated_pointwise(
          psi[m], psi[l], [](Complex a, Complex b) { return Complex((a * std::conj(b)).imag()); });
      q[m][l] = spectral::coefficients(im);
    }
  }

  const auto xi2 = grid.wavenumber_norm2();
  std::vector<ScalarField> a;
  a.reserve(d);
  for (int m = 0; m < d; ++m) {
    std::vector<Complex> am(grid.size(), Complex(0.0));
    for (int l = 0; l < d; ++l) {
      if (l == m) continue;
      const auto xi = grid.odd_wavenumbers(l);
      const auto& src = m < l ? q[m][l] : q[l][m];
      const double sign = m < l ? 1.0 : -1.0;
      for (std::size_t i = 0; i < am.size(); ++i) {
        if (xi2[i] > 0.0) am[i] += sign * Complex(0.0, xi[i] / xi2[i]) * src[i];
      }
    }
    a.push_back(spectral::from_coefficients(grid, std::move(am)).real_part());
  }
  return Connection(std::move(a));
}

ScalarField a0_from_psi(const PsiFields& psi_in) {
  require_psi(psi_in, "a0_from_psi");
  const PsiFields psi = truncated(psi_in);
  const Grid& grid = psi.front().grid();
  const int d = grid.dim();
  const auto xi2 = grid.wavenumber_norm2();

  std::vector<Complex> acc(grid.size(), Complex(0.0));
  ScalarField density(grid);
  for (int l = 0; l < d; ++l) {
    for (int lp = l; lp < d; ++lp) {
      const ScalarField re = truncated_pointwise(
          psi[l], psi[lp], [](Complex a, Complex b) { return Complex((std::conj(a) * b).real()); });
      if (l == lp) density += re;
      const auto c = spectral::coefficients(re);
      const auto xl = grid.odd_wavenumbers(l);
      const auto xlp = grid.odd_wavenumbers(lp);
      const double mult = l == lp ? 1.0 : 2.0;  // (l, l') and (l', l) terms coincide
      for (std::size_t i = 0; i < acc.size(); ++i) {
        if (xi2[i] > 0.0) acc[i] += -mult * xl[i] * xlp[i] / xi2[i] * c[i];
      }
    }
  }
  ScalarField a0 = spectral::from_coefficients(grid, std::move(acc));
  a0 += 0.5 * density;
  return a0.real_part();
}

ScalarField covariant_derivative(const ScalarField& f, const Connection& a, int m) {
  require_same_grid(f.grid(), a.grid(), "covariant_derivative");
  f.grid().check_axis(m);
  ScalarField out = spectral::partial_derivative(f, m);
  out += kI * spectral::dealiased_product(a[m], f);
  return out;
}

double residual_compatibility(const PsiFields& psi, const Connection& a) {
  require_psi(psi, "residual_compatibility");
  const int d = static_cast<int>(psi.size());
  double worst = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int l = m + 1; l < d; ++l) {
      const ScalarField r = covariant_derivative(psi[m], a, l) - covariant_derivative(psi[l], a, m);
      worst = std::max(worst, spectral::l2_norm(r));
    }
  }
  return worst;
}

double residual_curvature(const PsiFields& psi, const Connection& a) {
  require_psi(psi, "residual_curvature");
  const int d = static_cast<int>(psi.size());
  double worst = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int l = m + 1; l < d; ++l) {
      ScalarField r = spectral::partial_derivative(a[m], l) - spectral::partial_derivative(a[l], m);
      r -= spectral::dealiased_product(psi[l], psi[m].conj()).imag_part();
      worst = std::max(worst, spectral::l2_norm(r));
    }
  }
  return worst;
}

double residual_psi0(const Frame& frame, const PsiFields& psi, const Connection& a) {
  require_psi(psi, "residual_psi0");
  ScalarField r = derive_psi0(frame);
  for (int m = 0; m < static_cast<int>(psi.size()); ++m) {
    r -= kI * covariant_derivative(psi[m], a, m);
  }
  return spectral::l2_norm(r);
}

PsiFields msm_nonlinearity(const PsiFields& psi_in) {
  require_psi(psi_in, "msm_nonlinearity");
  const PsiFields psi = truncated(psi_in);
  const Grid& grid = psi.front().grid();
  const int d = grid.dim();

  const Connection a = a_from_psi(psi);
  ScalarField potential = a0_from_psi(psi);
  for (int l = 0; l < d; ++l) potential += spectral::dealiased_product(a[l], a[l]);

  // Im(psi_l conj(psi_m)), antisymmetric in (l, m).
  std::vector<std::vector<ScalarField>> im(d, std::vector<ScalarField>(d, ScalarField(grid)));
  for (int l = 0; l < d; ++l) {
    for (int m = l + 1; m < d; ++m) {
      im[l][m] = truncated_pointwise(
          psi[l], psi[m], [](Complex x, Complex y) { return Complex((x * std::conj(y)).imag()); });
      im[m][l] = -1.0 * im[l][m];
    }
  }

  PsiFields out;
  out.reserve(d);
  for (int m = 0; m < d; ++m) {
    ScalarField nm = spectral::dealiased_product(potential, psi[m]);
    for (int l = 0; l < d; ++l) {
      nm -= 2.0 * kI * spectral::dealiased_product(a[l], spectral::partial_derivative(psi[m], l));
      if (l != m) nm += kI * spectral::dealiased_product(im[l][m], psi[l]);
    }
    out.push_back(std::move(nm));
  }
  return out;
}

GaugeData gauge_data(const Frame& frame) {
  const CoulombGauge fixed = coulomb_fix(frame);
  PsiFields psi = derive_psi(fixed.frame);
  ScalarField a0 = a0_from_psi(psi);
  ScalarField psi0 = derive_psi0(fixed.frame);
  return GaugeData{std::move(psi), fixed.connection, std::move(a0), std::move(psi0)};
}

}  // namespace smap::gauge

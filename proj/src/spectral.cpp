#include "smap/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "smap/fft.hpp"

namespace smap::spectral {
namespace {

constexpr double kPlateau = 5.0 / 4.0;
constexpr double kSupport = 8.0 / 5.0;

template <class SymbolAt>
ScalarField apply_symbol(const ScalarField& f, SymbolAt&& symbol_at) {
  std::vector<Complex> c(f.values().begin(), f.values().end());
  fft::forward(f.grid(), c);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= symbol_at(i);
  fft::inverse(f.grid(), c);
  return ScalarField(f.grid(), std::move(c));
}

// Sum of w(|xi|^2) |c(xi)|^2, scaled to the continuum integral.
template <class Weight>
double weighted_energy(const ScalarField& f, Weight&& weight) {
  const auto c = coefficients(f);
  const auto xi2 = f.grid().wavenumber_norm2();
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += weight(xi2[i]) * std::norm(c[i]);
  const double n = static_cast<double>(f.size());
  return sum * f.grid().volume() / (n * n);
}

}  // namespace

std::vector<Complex> coefficients(const ScalarField& f) {
  std::vector<Complex> c(f.values().begin(), f.values().end());
  fft::forward(f.grid(), c);
  return c;
}

ScalarField from_coefficients(const Grid& grid, std::vector<Complex> coeffs) {
  fft::inverse(grid, coeffs);
  return ScalarField(grid, std::move(coeffs));
}

ScalarField fourier_multiplier(const ScalarField& f, const Symbol& symbol) {
  const Grid& g = f.grid();
  std::vector<double> xi(g.dim());
  std::vector<Complex> table(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int a = 0; a < g.dim(); ++a) xi[a] = g.wavenumbers(a)[i];
    table[i] = symbol(xi);
    if (!std::isfinite(table[i].real()) || !std::isfinite(table[i].imag())) {
      throw std::domain_error("fourier_multiplier: symbol is not finite at lattice index " +
                              std::to_string(i));
    }
  }
  return apply_symbol(f, [&](std::size_t i) { return table[i]; });
}

ScalarField partial_derivative(const ScalarField& f, int axis) {
  f.grid().check_axis(axis);
  const auto xi = f.grid().odd_wavenumbers(axis);
  return apply_symbol(f, [&](std::size_t i) { return Complex(0.0, xi[i]); });
}

ScalarField laplacian(const ScalarField& f) {
  const auto xi2 = f.grid().wavenumber_norm2();
  return apply_symbol(f, [&](std::size_t i) { return Complex(-xi2[i], 0.0); });
}

ScalarField riesz(const ScalarField& f, int axis) {
  f.grid().check_axis(axis);
  const auto xi = f.grid().odd_wavenumbers(axis);
  const auto xi2 = f.grid().wavenumber_norm2();
  return apply_symbol(f, [&](std::size_t i) {
    return xi2[i] > 0.0 ? Complex(0.0, xi[i] / std::sqrt(xi2[i])) : Complex(0.0);
  });
}

ScalarField nabla_power(const ScalarField& f, double sigma) {
  const auto xi2 = f.grid().wavenumber_norm2();
  return apply_symbol(f, [&](std::size_t i) {
    return xi2[i] > 0.0 ? Complex(std::pow(xi2[i], 0.5 * sigma)) : Complex(0.0);
  });
}

ScalarField inv_gradient_riesz(const ScalarField& f, int axis) {
  f.grid().check_axis(axis);
  const auto xi = f.grid().odd_wavenumbers(axis);
  const auto xi2 = f.grid().wavenumber_norm2();
  return apply_symbol(f, [&](std::size_t i) {
    return xi2[i] > 0.0 ? Complex(0.0, xi[i] / xi2[i]) : Complex(0.0);
  });
}

double eta0(double mu) {
  const double a = std::abs(mu);
  if (a <= kPlateau) return 1.0;
  if (a >= kSupport) return 0.0;
  const double t = (a - kPlateau) / (kSupport - kPlateau);
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

double eta_shell(double mu, int j) {
  if (j == 0) return eta0(mu);
  return eta0(std::ldexp(mu, -j)) - eta0(std::ldexp(mu, 1 - j));
}

double lp_weight(double xi_norm, int k) {
  return eta0(std::ldexp(xi_norm, -k)) - eta0(std::ldexp(xi_norm, 1 - k));
}

ScalarField lp_projector(const ScalarField& f, int k) {
  const auto xi2 = f.grid().wavenumber_norm2();
  return apply_symbol(f, [&](std::size_t i) {
    return xi2[i] > 0.0 ? Complex(lp_weight(std::sqrt(xi2[i]), k)) : Complex(0.0);
  });
}

std::pair<int, int> lp_range(const Grid& grid) {
  // eta0(|xi| / 2^kmax) = 1 needs |xi|_max <= (5/4) 2^kmax; the lower end
  // needs eta0(|xi|_min / 2^(kmin-1)) = 0, i.e. |xi|_min >= (8/5) 2^(kmin-1).
  // One extra shell on each side absorbs rounding at the boundaries.
  const double hi = std::sqrt(grid.max_wavenumber_norm2());
  const double lo = grid.min_nonzero_wavenumber();
  const int kmax = static_cast<int>(std::ceil(std::log2(hi / kPlateau))) + 1;
  const int kmin = static_cast<int>(std::floor(std::log2(lo / kSupport)));
  return {kmin, kmax};
}

double sobolev_norm(const ScalarField& f, double sigma, bool homogeneous) {
  if (!(sigma >= -1.0)) throw std::invalid_argument("sobolev_norm: sigma must be >= -1");
  if (homogeneous) {
    return std::sqrt(weighted_energy(f, [&](double xi2) {
      return xi2 > 0.0 ? std::pow(xi2, sigma) : 0.0;
    }));
  }
  return std::sqrt(weighted_energy(f, [&](double xi2) { return std::pow(1.0 + xi2, sigma); }));
}

double sobolev_norm(const VectorField3& f, double sigma, bool homogeneous) {
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) sum += std::pow(sobolev_norm(f.component(c), sigma, homogeneous), 2);
  return std::sqrt(sum);
}

double l2_norm(const ScalarField& f) {
  double sum = 0.0;
  for (const auto& v : f.values()) sum += std::norm(v);
  return std::sqrt(sum * f.grid().cell_volume());
}

double l2_norm(const VectorField3& f) {
  double sum = 0.0;
  for (const auto& v : f.values()) sum += dot(v, v);
  return std::sqrt(sum * f.grid().cell_volume());
}

int dealias_cutoff(const Grid& grid) { return (grid.n() - 1) / 3; }

ScalarField dealias(const ScalarField& f) {
  const Grid& g = f.grid();
  const int cutoff = dealias_cutoff(g);
  return apply_symbol(f, [&](std::size_t i) {
    for (int a = 0; a < g.dim(); ++a) {
      if (std::abs(g.mode(i, a)) > cutoff) return Complex(0.0);
    }
    return Complex(1.0);
  });
}

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b) {
  return dealias(dealias(a) * dealias(b));
}

VectorField3 vector_apply(const VectorField3& f,
                          const std::function<ScalarField(const ScalarField&)>& op) {
  return VectorField3::from_components(op(f.component(0)), op(f.component(1)),
                                       op(f.component(2)));
}

}  // namespace smap::spectral

#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "smap/field.hpp"

/// Fourier analysis on the torus: derivatives, multipliers, Littlewood-Paley
/// pieces and Sobolev norms.
///
/// Coefficients follow c(xi) = sum_x f(x) exp(-i xi . x); norms are scaled
/// so that Plancherel reproduces the continuum L^2 integral over [0, L)^d.
/// Every homogeneous symbol (|xi|^s, i xi_l / |xi|, i xi_l / |xi|^2) is set
/// to zero at xi = 0. Odd symbols (i xi_l, Riesz, i xi_l / |xi|^2) also vanish
/// on the unpaired mode xi_l = -n/2; even symbols use the full lattice.
namespace smap::spectral {

/// A multiplier symbol evaluated at the frequency vector xi (d entries).
using Symbol = std::function<Complex(std::span<const double> xi)>;

/// Forward coefficients of f (unnormalized DFT).
std::vector<Complex> coefficients(const ScalarField& f);
/// Inverse of `coefficients`.
ScalarField from_coefficients(const Grid& grid, std::vector<Complex> coeffs);

/// F(out)(xi) = symbol(xi) F(f)(xi). Throws std::domain_error if the symbol
/// is not finite somewhere on the lattice.
ScalarField fourier_multiplier(const ScalarField& f, const Symbol& symbol);

/// d/dx_axis, symbol i xi_axis.
ScalarField partial_derivative(const ScalarField& f, int axis);
/// Symbol -|xi|^2.
ScalarField laplacian(const ScalarField& f);
/// Riesz transform R_l, symbol i xi_l / |xi|.
ScalarField riesz(const ScalarField& f, int axis);
/// Symbol |xi|^sigma (the operator nabla^sigma).
ScalarField nabla_power(const ScalarField& f, double sigma);
/// nabla^-1 R_l as the single multiplier i xi_l / |xi|^2.
ScalarField inv_gradient_riesz(const ScalarField& f, int axis);

/// Smooth even cutoff: 1 on |mu| <= 5/4, 0 on |mu| >= 8/5, and
/// exp(1 - 1/(1 - t^2)) with t = (|mu| - 5/4) / (8/5 - 5/4) in between.
double eta0(double mu);
/// Dyadic modulation weight eta_j(mu) for j >= 0; eta_0 is the cutoff itself.
double eta_shell(double mu, int j);
/// eta_k^{(d)}(xi) = eta0(|xi| / 2^k) - eta0(|xi| / 2^{k-1}) as a function of |xi|.
double lp_weight(double xi_norm, int k);
/// Littlewood-Paley piece P_k f.
ScalarField lp_projector(const ScalarField& f, int k);
/// Inclusive range [kmin, kmax] such that the weights lp_weight(., k) over the
/// range sum to one at every nonzero lattice frequency of `grid`.
std::pair<int, int> lp_range(const Grid& grid);

/// Homogeneous (|xi|^sigma, zero mode dropped) or inhomogeneous
/// ((1 + |xi|^2)^(sigma/2)) Sobolev norm. Requires sigma >= -1.
double sobolev_norm(const ScalarField& f, double sigma, bool homogeneous);
/// Root-sum-square of the component norms.
double sobolev_norm(const VectorField3& f, double sigma, bool homogeneous);

/// Uniform-grid quadrature of the L^2 norm over the torus.
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField3& f);

/// Largest retained |mode| per axis under the 2/3 rule.
int dealias_cutoff(const Grid& grid);
/// Zero every mode with |mode| > dealias_cutoff on some axis.
ScalarField dealias(const ScalarField& f);
/// dealias(dealias(a) * dealias(b)).
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b);

/// Applies a scalar operation to each of the three components; results are
/// taken as real.
VectorField3 vector_apply(const VectorField3& f,
                          const std::function<ScalarField(const ScalarField&)>& op);

}  // namespace smap::spectral

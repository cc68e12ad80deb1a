#pragma once

#include <optional>
#include <vector>

#include "smap/geometry.hpp"

/// Frame coordinates of the derivatives of s and the identities they obey
/// in the Coulomb gauge.
///
/// Products formed from psi and A are computed in physical space with the
/// 2/3-rule truncation applied to the factors and to the result of every
/// binary product (cubic terms are two truncated binary products). The frame
/// evaluations psi_m = (d_m s).v + i (d_m s).w are pointwise and are not
/// truncated.
namespace smap::gauge {

using PsiFields = std::vector<ScalarField>;

struct GaugeData {
  PsiFields psi;
  Connection a;
  ScalarField a0;
  std::optional<ScalarField> psi0;
};

/// psi_m = (d_m s) . v + i (d_m s) . w for m = 0..d-1.
PsiFields derive_psi(const Frame& frame);

/// psi_0 = (d_t s) . v + i (d_t s) . w with d_t s = s x Laplace(s).
ScalarField derive_psi0(const Frame& frame);

/// A_m = sum_l nabla^-1 R_l [Im(psi_m conj(psi_l))]; divergence-free by
/// construction (the symbol is antisymmetric in m, l after contraction).
Connection a_from_psi(const PsiFields& psi);

/// A_0 = sum_{l,l'} R_l R_l' [Re(conj(psi_l) psi_l')] + 1/2 sum_l |psi_l|^2,
/// indices spatial only.
ScalarField a0_from_psi(const PsiFields& psi);

/// D_m f = d_m f + i A_m f.
ScalarField covariant_derivative(const ScalarField& f, const Connection& a, int m);

/// max over l < m of || D_l psi_m - D_m psi_l ||_{L^2}.
double residual_compatibility(const PsiFields& psi, const Connection& a);

/// max over l < m of || d_l A_m - d_m A_l - Im(psi_l conj(psi_m)) ||_{L^2}.
double residual_curvature(const PsiFields& psi, const Connection& a);

/// || psi_0 - i sum_m D_m psi_m ||_{L^2}, psi_0 taken from the frame.
double residual_psi0(const Frame& frame, const PsiFields& psi, const Connection& a);

/// Right-hand side N_m of (i d_t + Laplace) psi_m = N_m:
///   N_m = -2i sum_l A_l d_l psi_m + (A_0 + sum_l A_l^2) psi_m
///         + i sum_l Im(psi_l conj(psi_m)) psi_l,
/// with A, A_0 recomputed from psi. The cubic term is written with
/// Im(psi_l conj(psi_m)); the form -i Im(psi_m conj(psi_l)) psi_l is the same
/// quantity.
PsiFields msm_nonlinearity(const PsiFields& psi);

/// Coulomb-fixes the frame and collects psi, A (from the frame), A_0 (from
/// psi) and psi_0.
GaugeData gauge_data(const Frame& frame);

}  // namespace smap::gauge

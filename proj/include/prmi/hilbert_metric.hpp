#pragma once

#include <span>

#include "prmi/extended_real.hpp"
#include "prmi/operator_core.hpp"

namespace prmi {

// Hilbert's projective metric on the cone of positive semidefinite operators
// and on the cone of nonnegative vectors.

/// M(X/Y) = || Y^(-1/2) X Y^(-1/2) ||_inf if X << Y, +inf otherwise.
/// X is compressed onto the support of Y before the inverse square roots are
/// applied. Throws ZeroOperator when Y = 0.
ExtendedReal m_ratio(const HermitianOperator& x, const HermitianOperator& y, SupportCutoff cut = {});

/// d_H(X, Y) = log(M(X/Y) M(Y/X)) if X ~ Y and Y != 0; 0 if X = Y = 0; +inf otherwise.
ProjectiveDistance d_h(const HermitianOperator& x, const HermitianOperator& y, SupportCutoff cut = {});

/// M(P/Q) = max over supp(Q) of P(x)/Q(x) if P << Q, +inf otherwise.
ExtendedReal m_ratio(std::span<const double> p, std::span<const double> q);
ProjectiveDistance d_h(std::span<const double> p, std::span<const double> q);

/// -2 log min{ min spec(sigma)\{0}, min spec(tau)\{0} }, an upper bound on
/// d_H(sigma, tau) for states with equal support. Throws SupportMismatch otherwise.
double d_h_bound_from_spectra(const HermitianOperator& sigma, const HermitianOperator& tau,
                              SupportCutoff cut = {});

/// |d_H(Xa (x) Xb, Ya (x) Yb) - d_H(Xa, Ya) - d_H(Xb, Yb)|.
double tensor_additivity_residual(const HermitianOperator& x_a, const HermitianOperator& y_a,
                                  const HermitianOperator& x_b, const HermitianOperator& y_b,
                                  SupportCutoff cut = {});

}  // namespace prmi

#pragma once

#include "prmi/extended_real.hpp"
#include "prmi/operator_core.hpp"

namespace prmi {

/// tr[rho^alpha sigma^(1-alpha)] with both powers taken on the supports.
/// Zero when the supports are orthogonal; domain handling is up to the caller.
double q_alpha(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha,
               SupportCutoff cut = {});

/// Petz divergence of order alpha in (0,1) u (1,inf):
/// (1/(alpha-1)) log Q_alpha when (alpha < 1 and rho not perp sigma) or rho << sigma,
/// +inf otherwise. Throws UnsupportedOrder for alpha == 1.
DivergenceValue d_alpha(const HermitianOperator& rho, const HermitianOperator& sigma,
                        double alpha, SupportCutoff cut = {});

/// True when D_alpha(rho || sigma (x) tau) admits a finite partial minimum over
/// the second factor: (alpha < 1 and marginal not perp sigma) or marginal << sigma.
bool partial_min_domain_ok(const HermitianOperator& marginal, const HermitianOperator& sigma,
                           double alpha, SupportCutoff cut = {});

/// Outcome of minimizing D_alpha(rho_AB || sigma_A (x) tau_B) over tau_B (or the
/// mirror problem over sigma_A). With K = tr_A[rho^alpha sigma^(1-alpha)]:
///   state = K^(1/alpha) / tr[K^(1/alpha)],
///   q     = ||K||_(1/alpha)        (= Q_alpha at the minimizer),
///   value = log(q) / (alpha - 1)   (= the minimal divergence).
struct PartialMinimum {
    HermitianOperator state;
    double q = 0.0;
    double value = 0.0;
};

/// Minimizer over tau_B for a fixed sigma_A given a precomputed rho_AB^alpha.
/// No domain check.
PartialMinimum minimize_over_b(const HermitianOperator& rho_alpha, Index d_a, Index d_b,
                               const HermitianOperator& sigma_a, double alpha,
                               SupportCutoff cut = {});
/// Minimizer over sigma_A for a fixed tau_B given a precomputed rho_AB^alpha.
/// No domain check.
PartialMinimum minimize_over_a(const HermitianOperator& rho_alpha, Index d_a, Index d_b,
                               const HermitianOperator& tau_b, double alpha,
                               SupportCutoff cut = {});

/// argmin over tau_B of D_alpha(rho_AB || sigma_A (x) tau_B). Throws DomainViolation
/// unless (alpha < 1 and rho_A not perp sigma_A) or rho_A << sigma_A.
HermitianOperator partial_min_tau(const BipartiteState& rho_ab, const HermitianOperator& sigma_a,
                                  double alpha, SupportCutoff cut = {});
/// argmin over sigma_A of D_alpha(rho_AB || sigma_A (x) tau_B); mirror of partial_min_tau.
HermitianOperator partial_min_sigma(const BipartiteState& rho_ab, const HermitianOperator& tau_b,
                                    double alpha, SupportCutoff cut = {});

/// inf over tau_B of D_alpha(rho_AB || sigma_A (x) tau_B)
///   = (1/(alpha-1)) log || tr_A[rho^alpha sigma_A^(1-alpha)] ||_(1/alpha).
DivergenceValue inf_over_tau(const BipartiteState& rho_ab, const HermitianOperator& sigma_a,
                             double alpha, SupportCutoff cut = {});

/// |D(rho||sigma(x)tau) - D(rho||sigma(x)tau_hat) - D(tau_hat||tau)| where tau_hat is
/// the partial minimizer. 0 when both sides are +inf, +inf when exactly one is.
double sibson_residual(const BipartiteState& rho_ab, const HermitianOperator& sigma_a,
                       const HermitianOperator& tau_b, double alpha, SupportCutoff cut = {});

}  // namespace prmi

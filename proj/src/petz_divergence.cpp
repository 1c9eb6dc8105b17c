#include "prmi/petz_divergence.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace prmi {

namespace {

constexpr double kUnderflowQ = 1e-300;

void check_order(double alpha) {
    if (std::isnan(alpha) || !(alpha > 0.0) || std::isinf(alpha))
        throw InvalidExponent("order alpha must lie in (0, inf), got " + std::to_string(alpha));
}

void check_order_not_one(double alpha) {
    check_order(alpha);
    if (alpha == 1.0) throw UnsupportedOrder("alpha = 1 is not supported");
}

PartialMinimum finish_partial_minimum(const HermitianOperator& k, double alpha, SupportCutoff cut) {
    const Eigensystem es = eig_hermitian(k);
    HermitianOperator root = power_on_support(es, 1.0 / alpha, cut);
    const double t = root.trace();
    if (!(t > 0.0)) throw DomainViolation("partial minimization produced the zero operator");
    PartialMinimum pm;
    pm.state = root * (1.0 / t);
    pm.q = std::pow(t, alpha);
    pm.value = alpha * std::log(t) / (alpha - 1.0);
    return pm;
}

}  // namespace

double q_alpha(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha,
               SupportCutoff cut) {
    check_order(alpha);
    if (rho.dim() != sigma.dim()) throw DimMismatch("q_alpha: dimension mismatch");
    const HermitianOperator rp = power_on_support(rho, alpha, cut);
    const HermitianOperator sp = power_on_support(sigma, 1.0 - alpha, cut);
    // tr[A B] for Hermitian A, B
    const double q = rp.matrix().cwiseProduct(sp.matrix().transpose()).sum().real();
    return q > 0.0 ? q : 0.0;
}

DivergenceValue d_alpha(const HermitianOperator& rho, const HermitianOperator& sigma,
                        double alpha, SupportCutoff cut) {
    check_order_not_one(alpha);
    const bool dominated = is_dominated(rho, sigma, cut);
    const bool finite_domain = dominated || (alpha < 1.0 && !is_orthogonal(rho, sigma, cut));
    if (!finite_domain) return DivergenceValue::infinity();
    const double q = q_alpha(rho, sigma, alpha, cut);
    if (alpha > 1.0 && q <= kUnderflowQ) return DivergenceValue::infinity();
    if (q <= 0.0) return DivergenceValue::infinity();
    return DivergenceValue(std::log(q) / (alpha - 1.0));
}

bool partial_min_domain_ok(const HermitianOperator& marginal, const HermitianOperator& sigma,
                           double alpha, SupportCutoff cut) {
    if (is_dominated(marginal, sigma, cut)) return true;
    return alpha < 1.0 && !is_orthogonal(marginal, sigma, cut);
}

PartialMinimum minimize_over_b(const HermitianOperator& rho_alpha, Index d_a, Index d_b,
                               const HermitianOperator& sigma_a, double alpha,
                               SupportCutoff cut) {
    const HermitianOperator sp = power_on_support(sigma_a, 1.0 - alpha, cut);
    return finish_partial_minimum(partial_trace_a_weighted(rho_alpha, sp, d_a, d_b), alpha, cut);
}

PartialMinimum minimize_over_a(const HermitianOperator& rho_alpha, Index d_a, Index d_b,
                               const HermitianOperator& tau_b, double alpha,
                               SupportCutoff cut) {
    const HermitianOperator tp = power_on_support(tau_b, 1.0 - alpha, cut);
    return finish_partial_minimum(partial_trace_b_weighted(rho_alpha, tp, d_a, d_b), alpha, cut);
}

HermitianOperator partial_min_tau(const BipartiteState& rho_ab, const HermitianOperator& sigma_a,
                                  double alpha, SupportCutoff cut) {
    check_order_not_one(alpha);
    if (sigma_a.dim() != rho_ab.d_a()) throw DimMismatch("partial_min_tau: sigma_A has wrong dimension");
    if (!partial_min_domain_ok(rho_ab.marginal_a(), sigma_a, alpha, cut))
        throw DomainViolation("rho_A and sigma_A violate the support condition");
    const HermitianOperator ra = power_on_support(rho_ab.op(), alpha, cut);
    return minimize_over_b(ra, rho_ab.d_a(), rho_ab.d_b(), sigma_a, alpha, cut).state;
}

HermitianOperator partial_min_sigma(const BipartiteState& rho_ab, const HermitianOperator& tau_b,
                                    double alpha, SupportCutoff cut) {
    check_order_not_one(alpha);
    if (tau_b.dim() != rho_ab.d_b()) throw DimMismatch("partial_min_sigma: tau_B has wrong dimension");
    if (!partial_min_domain_ok(rho_ab.marginal_b(), tau_b, alpha, cut))
        throw DomainViolation("rho_B and tau_B violate the support condition");
    const HermitianOperator ra = power_on_support(rho_ab.op(), alpha, cut);
    return minimize_over_a(ra, rho_ab.d_a(), rho_ab.d_b(), tau_b, alpha, cut).state;
}

DivergenceValue inf_over_tau(const BipartiteState& rho_ab, const HermitianOperator& sigma_a,
                             double alpha, SupportCutoff cut) {
    check_order_not_one(alpha);
    if (!partial_min_domain_ok(rho_ab.marginal_a(), sigma_a, alpha, cut))
        return DivergenceValue::infinity();
    const HermitianOperator ra = power_on_support(rho_ab.op(), alpha, cut);
    const HermitianOperator sp = power_on_support(sigma_a, 1.0 - alpha, cut);
    const HermitianOperator k = partial_trace_a_weighted(ra, sp, rho_ab.d_a(), rho_ab.d_b());
    const double norm = schatten_norm(k, 1.0 / alpha);
    return DivergenceValue(std::log(norm) / (alpha - 1.0));
}

double sibson_residual(const BipartiteState& rho_ab, const HermitianOperator& sigma_a,
                       const HermitianOperator& tau_b, double alpha, SupportCutoff cut) {
    const HermitianOperator tau_hat = partial_min_tau(rho_ab, sigma_a, alpha, cut);
    const DivergenceValue lhs = d_alpha(rho_ab.op(), kron(sigma_a, tau_b), alpha, cut);
    const DivergenceValue at_hat = d_alpha(rho_ab.op(), kron(sigma_a, tau_hat), alpha, cut);
    const DivergenceValue gap = d_alpha(tau_hat, tau_b, alpha, cut);
    const bool rhs_inf = at_hat.is_infinite() || gap.is_infinite();
    if (lhs.is_infinite() && rhs_inf) return 0.0;
    if (lhs.is_infinite() || rhs_inf) return std::numeric_limits<double>::infinity();
    return std::abs(lhs.value() - at_hat.value() - gap.value());
}

}  // namespace prmi

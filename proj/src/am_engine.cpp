#include "prmi/am_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "prmi/detail/trace_builder.hpp"
#include "prmi/hilbert_metric.hpp"
#include "prmi/random_states.hpp"

namespace prmi {

namespace {

constexpr double kContractionSlack = 1e-9;

void check_alpha(double alpha) {
    if (!std::isfinite(alpha) || !(alpha > 0.0))
        throw InvalidConfig("alpha must lie in (0, inf), got " + std::to_string(alpha));
    if (alpha == 1.0) throw UnsupportedOrder("alpha = 1 is not supported");
}

void check_config(const AmConfig& config) {
    check_alpha(config.alpha);
    if (!std::isfinite(config.eps0) || !(config.eps0 > 0.0))
        throw InvalidConfig("eps0 must be a positive real");
    if (config.max_iter < 1) throw InvalidConfig("max_iter must be >= 1");
}

using Iterate = detail::Iterate<HermitianOperator>;
using TraceBuilder = detail::TraceBuilder<HermitianOperator>;
using detail::descent;

Iterate start(const AlternatingMinimizer& m, const HermitianOperator& sigma0) {
    PartialMinimum pm = m.a_to_b(sigma0);
    return {sigma0, std::move(pm.state), pm.value, pm.q};
}

Iterate step(const AlternatingMinimizer& m, const Iterate& prev) {
    PartialMinimum s = m.b_to_a(prev.tau);
    PartialMinimum t = m.a_to_b(s.state);
    return {std::move(s.state), std::move(t.state), t.value, t.q};
}

// Restricted initializer; the certified iterations require it to share the
// support of rho_A.
HermitianOperator prepared_initializer(const BipartiteState& rho, const AmConfig& config) {
    const HermitianOperator rho_a = rho.marginal_a();
    HermitianOperator s = restrict_initializer(initial_state(rho, config.init), rho_a, config.cut);
    if (support_relation(s, rho_a, config.cut) != SupportRelation::equal_support)
        throw DomainViolation("initializer does not dominate rho_A");
    return s;
}

}  // namespace

const char* to_string(Termination t) {
    switch (t) {
        case Termination::certificate: return "certificate";
        case Termination::max_iter: return "max_iter";
        case Termination::uncertified: return "uncertified";
    }
    return "max_iter";
}

bool in_linear_range(double alpha) { return alpha > 1.0 && alpha <= 2.0; }
bool in_sublinear_range(double alpha) { return alpha > 0.5 && alpha < 1.0; }

AlternatingMinimizer::AlternatingMinimizer(BipartiteState rho, double alpha, SupportCutoff cut)
    : rho_(std::move(rho)),
      alpha_(alpha),
      cut_(cut),
      rho_alpha_(power_on_support(rho_.op(), alpha, cut)),
      rho_a_(rho_.marginal_a()),
      rho_b_(rho_.marginal_b()) {
    check_alpha(alpha);
}

PartialMinimum AlternatingMinimizer::a_to_b(const HermitianOperator& sigma_a) const {
    return minimize_over_b(rho_alpha_, rho_.d_a(), rho_.d_b(), sigma_a, alpha_, cut_);
}

PartialMinimum AlternatingMinimizer::b_to_a(const HermitianOperator& tau_b) const {
    return minimize_over_a(rho_alpha_, rho_.d_a(), rho_.d_b(), tau_b, alpha_, cut_);
}

HermitianOperator n_a_to_b(const BipartiteState& rho, const HermitianOperator& sigma_a, double alpha,
                           SupportCutoff cut) {
    check_alpha(alpha);
    if (sigma_a.dim() != rho.d_a()) throw DimMismatch("n_a_to_b: sigma_A has wrong dimension");
    if (!partial_min_domain_ok(rho.marginal_a(), sigma_a, alpha, cut))
        throw DomainViolation("N_{A->B}: sigma_A violates the support condition");
    return AlternatingMinimizer(rho, alpha, cut).a_to_b(sigma_a).state;
}

HermitianOperator n_b_to_a(const BipartiteState& rho, const HermitianOperator& tau_b, double alpha,
                           SupportCutoff cut) {
    check_alpha(alpha);
    if (tau_b.dim() != rho.d_b()) throw DimMismatch("n_b_to_a: tau_B has wrong dimension");
    if (!partial_min_domain_ok(rho.marginal_b(), tau_b, alpha, cut))
        throw DomainViolation("N_{B->A}: tau_B violates the support condition");
    return AlternatingMinimizer(rho, alpha, cut).b_to_a(tau_b).state;
}

HermitianOperator restrict_initializer(const HermitianOperator& sigma0, const HermitianOperator& rho_a,
                                       SupportCutoff cut) {
    if (sigma0.dim() != rho_a.dim()) throw DimMismatch("restrict_initializer: dimension mismatch");
    const HermitianOperator p = support_projector(rho_a, cut);
    const HermitianOperator c = compress(sigma0, p);
    const double t = c.trace();
    if (!(t > cut.rel_tol * std::abs(sigma0.trace())) || !(t > 0.0))
        throw OrthogonalInitializer("tr[rho_A^0 sigma0] vanishes");
    return c * (1.0 / t);
}

HermitianOperator initial_state(const BipartiteState& rho, const Initializer& init) {
    switch (init.kind) {
        case InitKind::marginal_rho_a: return rho.marginal_a();
        case InitKind::uniform:
            return HermitianOperator::identity(rho.d_a()) * (1.0 / static_cast<double>(rho.d_a()));
        case InitKind::explicit_state: {
            if (init.state.dim() != rho.d_a())
                throw DimMismatch("explicit initializer must act on A (dim " + std::to_string(rho.d_a()) + ")");
            const Eigensystem es = eig_hermitian(init.state);
            if (es.values(es.values.size() - 1) < -1e-10)
                throw InvalidConfig("explicit initializer is not positive semidefinite");
            return init.state;
        }
    }
    return rho.marginal_a();
}

LinearConstants linear_constants(const BipartiteState& rho, const HermitianOperator& sigma0, double alpha,
                                 SupportCutoff cut) {
    check_alpha(alpha);
    if (!(alpha > 1.0)) throw InvalidConfig("linear constants require alpha > 1");
    const AlternatingMinimizer m(rho, alpha, cut);
    LinearConstants k;
    k.gamma = 1.0 - 1.0 / alpha;
    k.lambda_a = min_nonzero_eig(partial_trace(m.rho_alpha(), rho.d_a(), rho.d_b(), Subsystem::B), cut);
    k.lambda_b = min_nonzero_eig(partial_trace(m.rho_alpha(), rho.d_a(), rho.d_b(), Subsystem::A), cut);
    k.sigma0 = restrict_initializer(sigma0, m.rho_a(), cut);
    if (!is_dominated(m.rho_a(), k.sigma0, cut))
        throw DomainViolation("initializer does not dominate rho_A");
    const HermitianOperator tau0 = m.a_to_b(k.sigma0).state;
    k.q0 = q_alpha(rho.op(), kron(k.sigma0, tau0), alpha, cut);
    k.c_a = std::pow(k.lambda_a / k.q0, 1.0 / alpha);
    k.c_b = std::pow(k.lambda_b / k.q0, 1.0 / alpha);
    k.lambda_sigma0 = min_nonzero_eig(k.sigma0, cut);
    k.c0 = -2.0 * std::log(std::min(k.lambda_sigma0, k.c_a));
    return k;
}

SublinearConstants sublinear_constants(const BipartiteState& rho, const HermitianOperator& sigma0,
                                       double alpha, SupportCutoff cut) {
    check_alpha(alpha);
    if (!in_sublinear_range(alpha)) throw InvalidConfig("sublinear constants require alpha in (1/2, 1)");
    const HermitianOperator rho_alpha = power_on_support(rho.op(), alpha, cut);
    SublinearConstants k;
    k.lambda_a = min_nonzero_eig(partial_trace(rho_alpha, rho.d_a(), rho.d_b(), Subsystem::B), cut);
    k.lambda_b = min_nonzero_eig(partial_trace(rho_alpha, rho.d_a(), rho.d_b(), Subsystem::A), cut);
    k.sigma0 = restrict_initializer(sigma0, rho.marginal_a(), cut);
    k.lambda_a0 = min_nonzero_eig(k.sigma0, cut);

    const double la = k.lambda_a;
    const double lb = k.lambda_b;
    const double a = alpha;
    const double lead = std::max(1.0 / lb, std::pow(la, a * (1.0 - a) / (1.0 - 2.0 * a)) *
                                               std::pow(lb, a * a / (1.0 - 2.0 * a)));
    k.c0 = 2.0 * std::sqrt(5.0) * lead * std::pow(k.lambda_a0, a - 1.0);

    const double e = 2.0 * a - 1.0;
    k.c_a = std::min(1.0, std::pow(la, a / e) * std::pow(lb, (1.0 - a) / e)) * k.lambda_a0;
    k.c_b = std::min(1.0, std::pow(la, (1.0 - a) / e) * std::pow(lb, (1.0 - a) * (1.0 - a) / (e * a))) *
            std::pow(lb, 1.0 / a) * std::pow(k.lambda_a0, (1.0 - a) / a);
    return k;
}

ExtendedReal linear_error_bound(double alpha, double c0, std::size_t n) {
    const double gamma = std::abs(1.0 - 1.0 / alpha);
    const double a = std::abs(alpha - 1.0);
    const double shrink = std::pow(gamma, 2.0 * static_cast<double>(n));
    const double v = std::expm1(a * (1.0 + gamma) * shrink * c0) / a;
    return std::isfinite(v) ? ExtendedReal(v) : ExtendedReal::infinity();
}

ConvergenceTrace algorithm1(const BipartiteState& rho, const AmConfig& config) {
    check_config(config);
    if (!in_linear_range(config.alpha))
        throw InvalidConfig("algorithm1 requires alpha in (1, 2], got " + std::to_string(config.alpha));
    const LinearConstants k = linear_constants(rho, prepared_initializer(rho, config), config.alpha, config.cut);
    const AlternatingMinimizer m(rho, config.alpha, config.cut);
    TraceBuilder tb(config.alpha, config.eps0, config.record_states, "linear", k.c0);

    Iterate it = start(m, k.sigma0);
    std::size_t n = 0;
    ExtendedReal eps = linear_error_bound(config.alpha, k.c0, n);
    tb.record(n, it, eps);
    while (!(eps.value() < config.eps0) && n < config.max_iter) {
        const double previous = it.x;
        it = step(m, it);
        descent(previous, it.x);
        ++n;
        eps = linear_error_bound(config.alpha, k.c0, n);
        tb.record(n, it, eps);
    }
    return tb.finish(it, eps.value() < config.eps0 ? Termination::certificate : Termination::max_iter);
}

ConvergenceTrace algorithm2(const BipartiteState& rho, const AmConfig& config) {
    check_config(config);
    if (!in_sublinear_range(config.alpha))
        throw InvalidConfig("algorithm2 requires alpha in (1/2, 1), got " + std::to_string(config.alpha));
    const SublinearConstants k =
        sublinear_constants(rho, prepared_initializer(rho, config), config.alpha, config.cut);
    const AlternatingMinimizer m(rho, config.alpha, config.cut);
    TraceBuilder tb(config.alpha, config.eps0, config.record_states, "sublinear", k.c0);

    Iterate it = start(m, k.sigma0);
    double x_prev = it.x;
    tb.record(0, it, ExtendedReal::infinity());
    it = step(m, it);
    std::size_t n = 1;
    double eps = k.c0 * std::sqrt(descent(x_prev, it.x));
    tb.record(n, it, ExtendedReal(eps));
    while (eps >= config.eps0 && n < config.max_iter) {
        x_prev = it.x;
        it = step(m, it);
        ++n;
        eps = k.c0 * std::sqrt(descent(x_prev, it.x));
        tb.record(n, it, ExtendedReal(eps));
    }
    return tb.finish(it, eps < config.eps0 ? Termination::certificate : Termination::max_iter);
}

ConvergenceTrace iterate_fixed(const BipartiteState& rho, const AmConfig& config, std::size_t iterations) {
    check_alpha(config.alpha);
    const AlternatingMinimizer m(rho, config.alpha, config.cut);
    TraceBuilder tb(config.alpha, config.eps0, config.record_states, "fixed", 0.0);
    Iterate it = start(m, prepared_initializer(rho, config));
    tb.record(0, it, ExtendedReal::infinity());
    for (std::size_t n = 1; n <= iterations; ++n) {
        it = step(m, it);
        tb.record(n, it, ExtendedReal::infinity());
    }
    return tb.finish(it, Termination::uncertified);
}

ConvergenceTrace run_uncertified(const BipartiteState& rho, const AmConfig& config) {
    check_config(config);
    const AlternatingMinimizer m(rho, config.alpha, config.cut);
    TraceBuilder tb(config.alpha, config.eps0, config.record_states, "uncertified", 0.0);
    Iterate it = start(m, prepared_initializer(rho, config));
    tb.record(0, it, ExtendedReal::infinity());
    for (std::size_t n = 1; n <= config.max_iter; ++n) {
        const double previous = it.x;
        it = step(m, it);
        tb.record(n, it, ExtendedReal::infinity());
        if (std::abs(previous - it.x) < config.eps0) return tb.finish(it, Termination::uncertified);
    }
    return tb.finish(it, Termination::max_iter);
}

ConvergenceTrace solve(const BipartiteState& rho, const AmConfig& config, bool allow_uncertified) {
    check_alpha(config.alpha);
    if (in_linear_range(config.alpha)) return algorithm1(rho, config);
    if (in_sublinear_range(config.alpha)) return algorithm2(rho, config);
    if (!allow_uncertified)
        throw InvalidConfig("alpha = " + std::to_string(config.alpha) +
                            " is outside the certified ranges (1/2,1) and (1,2]");
    return run_uncertified(rho, config);
}

ContractionReport contraction_probe(const BipartiteState& rho, double alpha, std::size_t trials,
                                    std::uint64_t seed, SupportCutoff cut) {
    check_alpha(alpha);
    const AlternatingMinimizer m(rho, alpha, cut);
    Rng rng(seed);
    ContractionReport report;
    report.gamma = std::abs(1.0 - 1.0 / alpha);
    for (std::size_t i = 0; i < trials; ++i) {
        const HermitianOperator s = restrict_initializer(random_density(rho.d_a(), rng), m.rho_a(), cut);
        const HermitianOperator t = restrict_initializer(random_density(rho.d_a(), rng), m.rho_a(), cut);
        const ProjectiveDistance before = d_h(s, t, cut);
        const ProjectiveDistance after = d_h(m.a_to_b(s).state, m.a_to_b(t).state, cut);
        ++report.trials;
        if (after.value() > report.gamma * before.value() + kContractionSlack) ++report.violations;
        if (before.is_finite() && before.value() > 0.0)
            report.max_ratio = std::max(report.max_ratio, after.value() / before.value());
    }
    return report;
}

KappaEstimate kappa_estimate(const BipartiteState& rho, double alpha, std::size_t samples,
                             std::uint64_t seed, SupportCutoff cut) {
    check_alpha(alpha);
    const Eigensystem es = eig_hermitian(rho.op());
    const double lmin = es.values(es.values.size() - 1);
    if (!(lmin > 0.0) || lmin < cut.rel_tol * es.values(0))
        throw NotStrictlyPositive("kappa_estimate requires rho_AB > 0");
    const HermitianOperator rho_alpha = power_on_support(es, alpha, cut);

    std::vector<Eigen::VectorXcd> vectors;
    for (Index i = 0; i < rho.d_a(); ++i) vectors.push_back(Eigen::VectorXcd::Unit(rho.d_a(), i));
    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) vectors.push_back(random_unit_vector(rho.d_a(), rng));

    std::vector<HermitianOperator> blocks;
    blocks.reserve(vectors.size());
    for (const auto& v : vectors)
        blocks.push_back(partial_trace_a_weighted(rho_alpha, HermitianOperator::projector(v), rho.d_a(), rho.d_b()));

    KappaEstimate est;
    est.vectors = vectors.size();
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            est.delta = std::max(est.delta, d_h(blocks[i], blocks[j], cut).value());
    est.kappa = std::tanh(est.delta / 4.0);
    return est;
}

}  // namespace prmi

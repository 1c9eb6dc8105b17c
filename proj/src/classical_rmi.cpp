#include "prmi/classical_rmi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "prmi/detail/trace_builder.hpp"
#include "prmi/hilbert_metric.hpp"

namespace prmi {

namespace {

constexpr double kSumTol = 1e-12;
constexpr double kContractionSlack = 1e-9;

using Vec = std::vector<double>;
using Iterate = detail::Iterate<Vec>;
using TraceBuilder = detail::TraceBuilder<Vec>;
using detail::descent;

void check_alpha(double alpha) {
    if (!std::isfinite(alpha) || !(alpha > 0.0))
        throw InvalidConfig("alpha must lie in (0, inf), got " + std::to_string(alpha));
    if (alpha == 1.0) throw UnsupportedOrder("alpha = 1 is not supported");
}

void check_config(const ClassicalConfig& config) {
    check_alpha(config.alpha);
    if (!std::isfinite(config.eps0) || !(config.eps0 > 0.0))
        throw InvalidConfig("eps0 must be a positive real");
    if (config.max_iter < 1) throw InvalidConfig("max_iter must be >= 1");
}

template <class Range>
void check_weights(const Range& w, std::size_t count) {
    if (count == 0) throw ValidationError("dimensions", "empty distribution");
    double sum = 0.0;
    for (double v : w) {
        if (!std::isfinite(v)) throw ValidationError("finite", "non-finite weight");
        if (v < 0.0) throw ValidationError("nonnegative", "negative weight " + std::to_string(v));
        sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTol)
        throw ValidationError("normalized", "weights sum to " + std::to_string(sum));
}

bool dominated(std::span<const double> p, std::span<const double> q) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0.0 && q[i] == 0.0) return false;
    return true;
}

bool orthogonal(std::span<const double> p, std::span<const double> q) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0.0 && q[i] > 0.0) return false;
    return true;
}

void check_partial_domain(std::span<const double> marginal, std::span<const double> other, double alpha,
                          const char* map) {
    if (marginal.size() != other.size()) throw DimMismatch(std::string(map) + ": length mismatch");
    const bool ok = alpha > 1.0 ? dominated(marginal, other) : !orthogonal(marginal, other);
    if (!ok) throw DomainViolation(std::string(map) + ": argument violates the support condition");
}

// K^(1/alpha) normalized, with t = sum K^(1/alpha).
ClassicalPartialMinimum finish(const Eigen::VectorXd& k, double alpha) {
    Vec root(static_cast<std::size_t>(k.size()));
    double t = 0.0;
    for (Index i = 0; i < k.size(); ++i) {
        root[static_cast<std::size_t>(i)] = k(i) > 0.0 ? std::pow(k(i), 1.0 / alpha) : 0.0;
        t += root[static_cast<std::size_t>(i)];
    }
    if (!(t > 0.0)) throw DomainViolation("partial minimization: weighted marginal vanishes");
    for (double& v : root) v /= t;
    return {std::move(root), std::pow(t, alpha), alpha * std::log(t) / (alpha - 1.0)};
}

Eigen::MatrixXd powered(const JointPmf& p, double alpha) {
    return p.matrix().unaryExpr([alpha](double v) { return v > 0.0 ? std::pow(v, alpha) : 0.0; });
}

Vec initial_pmf(const JointPmf& p, InitKind kind, const Vec& explicit_pmf) {
    switch (kind) {
        case InitKind::marginal_rho_a: return p.marginal_x().vec();
        case InitKind::uniform: return Pmf::uniform(static_cast<std::size_t>(p.nx())).vec();
        case InitKind::explicit_state: {
            if (explicit_pmf.size() != static_cast<std::size_t>(p.nx()))
                throw DimMismatch("explicit initializer must have " + std::to_string(p.nx()) + " entries");
            return Pmf(explicit_pmf).vec();
        }
    }
    return p.marginal_x().vec();
}

// Q restricted to supp P_X and renormalized.
Vec restrict_to(const Vec& q, const Vec& px) {
    Vec out(q.size(), 0.0);
    double t = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (px[i] > 0.0) t += (out[i] = q[i]);
    if (!(t > 0.0)) throw OrthogonalInitializer("initializer vanishes on supp P_X");
    for (double& v : out) v /= t;
    return out;
}

Vec prepared_initializer(const JointPmf& p, const ClassicalConfig& config) {
    const Vec px = p.marginal_x().vec();
    Vec q = restrict_to(initial_pmf(p, config.init, config.init_pmf), px);
    if (!dominated(px, q)) throw DomainViolation("initializer does not dominate P_X");
    return q;
}

double min_positive(std::span<const double> v) {
    double m = std::numeric_limits<double>::infinity();
    for (double x : v)
        if (x > 0.0) m = std::min(m, x);
    return m;
}

class ClassicalMaps {
public:
    ClassicalMaps(const JointPmf& p, double alpha) : p_alpha_(powered(p, alpha)), alpha_(alpha) {}

    const Eigen::MatrixXd& p_alpha() const noexcept { return p_alpha_; }

    Iterate start(const Vec& q) const {
        ClassicalPartialMinimum r = minimize_over_y(p_alpha_, q, alpha_);
        return {q, std::move(r.state), r.value, r.q};
    }

    Iterate step(const Iterate& prev) const {
        ClassicalPartialMinimum s = minimize_over_x(p_alpha_, prev.tau, alpha_);
        ClassicalPartialMinimum t = minimize_over_y(p_alpha_, s.state, alpha_);
        return {std::move(s.state), std::move(t.state), t.value, t.q};
    }

private:
    Eigen::MatrixXd p_alpha_;
    double alpha_;
};

ClassicalTrace run_linear(const JointPmf& p, const ClassicalConfig& config, const Vec& q0) {
    const ClassicalLinearConstants k = classical_linear_constants(p, q0, config.alpha);
    const ClassicalMaps maps(p, config.alpha);
    TraceBuilder tb(config.alpha, config.eps0, config.record_states, "linear", k.c0);
    Iterate it = maps.start(k.q_init);
    std::size_t n = 0;
    ExtendedReal eps = linear_error_bound(config.alpha, k.c0, n);
    tb.record(n, it, eps);
    while (!(eps.value() < config.eps0) && n < config.max_iter) {
        const double previous = it.x;
        it = maps.step(it);
        descent(previous, it.x);
        ++n;
        eps = linear_error_bound(config.alpha, k.c0, n);
        tb.record(n, it, eps);
    }
    return tb.finish(it, eps.value() < config.eps0 ? Termination::certificate : Termination::max_iter);
}

ClassicalTrace run_sublinear(const JointPmf& p, const ClassicalConfig& config, const Vec& q0) {
    const double c0 = sublinear_constants(cc_embed(p), HermitianOperator::diagonal(q0), config.alpha).c0;
    const ClassicalMaps maps(p, config.alpha);
    TraceBuilder tb(config.alpha, config.eps0, config.record_states, "sublinear", c0);
    Iterate it = maps.start(q0);
    double x_prev = it.x;
    tb.record(0, it, ExtendedReal::infinity());
    it = maps.step(it);
    std::size_t n = 1;
    double eps = c0 * std::sqrt(descent(x_prev, it.x));
    tb.record(n, it, ExtendedReal(eps));
    while (eps >= config.eps0 && n < config.max_iter) {
        x_prev = it.x;
        it = maps.step(it);
        ++n;
        eps = c0 * std::sqrt(descent(x_prev, it.x));
        tb.record(n, it, ExtendedReal(eps));
    }
    return tb.finish(it, eps < config.eps0 ? Termination::certificate : Termination::max_iter);
}

ClassicalTrace run_uncertified(const JointPmf& p, const ClassicalConfig& config, const Vec& q0) {
    const ClassicalMaps maps(p, config.alpha);
    TraceBuilder tb(config.alpha, config.eps0, config.record_states, "uncertified", 0.0);
    Iterate it = maps.start(q0);
    tb.record(0, it, ExtendedReal::infinity());
    for (std::size_t n = 1; n <= config.max_iter; ++n) {
        const double previous = it.x;
        it = maps.step(it);
        tb.record(n, it, ExtendedReal::infinity());
        if (std::abs(previous - it.x) < config.eps0) return tb.finish(it, Termination::uncertified);
    }
    return tb.finish(it, Termination::max_iter);
}

}  // namespace

Pmf::Pmf(std::vector<double> weights) : w_(std::move(weights)) { check_weights(w_, w_.size()); }

Pmf Pmf::uniform(std::size_t n) {
    if (n == 0) throw ValidationError("dimensions", "empty distribution");
    return Pmf(Vec(n, 1.0 / static_cast<double>(n)));
}

JointPmf::JointPmf(Eigen::MatrixXd weights) : w_(std::move(weights)) {
    check_weights(w_.reshaped(), static_cast<std::size_t>(w_.size()));
}

Pmf JointPmf::marginal_x() const {
    const Eigen::VectorXd m = w_.rowwise().sum();
    return Pmf(Vec(m.begin(), m.end()));
}

Pmf JointPmf::marginal_y() const {
    const Eigen::RowVectorXd m = w_.colwise().sum();
    return Pmf(Vec(m.begin(), m.end()));
}

Pmf random_pmf(std::size_t n, Rng& rng) {
    if (n == 0) throw ValidationError("dimensions", "empty distribution");
    std::exponential_distribution<double> e(1.0);
    Vec w(n);
    for (double& v : w) v = e(rng) + std::numeric_limits<double>::min();
    const double t = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) v /= t;
    return Pmf(std::move(w));
}

JointPmf random_joint_pmf(Index nx, Index ny, Rng& rng) {
    if (nx < 1 || ny < 1) throw ValidationError("dimensions", "empty joint distribution");
    const Pmf flat = random_pmf(static_cast<std::size_t>(nx * ny), rng);
    Eigen::MatrixXd m(nx, ny);
    for (Index x = 0; x < nx; ++x)
        for (Index y = 0; y < ny; ++y) m(x, y) = flat[static_cast<std::size_t>(x * ny + y)];
    return JointPmf(m / m.sum());
}

JointPmf product_pmf(const Pmf& px, const Pmf& py) {
    Eigen::MatrixXd m(static_cast<Index>(px.size()), static_cast<Index>(py.size()));
    for (Index x = 0; x < m.rows(); ++x)
        for (Index y = 0; y < m.cols(); ++y)
            m(x, y) = px[static_cast<std::size_t>(x)] * py[static_cast<std::size_t>(y)];
    return JointPmf(m / m.sum());
}

ExtendedReal d_alpha_classical(std::span<const double> p, std::span<const double> q, double alpha) {
    check_alpha(alpha);
    if (p.size() != q.size()) throw DimMismatch("d_alpha_classical: length mismatch");
    if (alpha > 1.0 && !dominated(p, q)) return ExtendedReal::infinity();
    if (alpha < 1.0 && orthogonal(p, q)) return ExtendedReal::infinity();
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0.0 && q[i] > 0.0) s += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
    return ExtendedReal(std::log(s) / (alpha - 1.0));
}

ExtendedReal d_alpha_classical(const JointPmf& p, const Pmf& q, const Pmf& r, double alpha) {
    if (q.size() != static_cast<std::size_t>(p.nx()) || r.size() != static_cast<std::size_t>(p.ny()))
        throw DimMismatch("d_alpha_classical: marginal length mismatch");
    Vec joint, prod;
    for (Index x = 0; x < p.nx(); ++x)
        for (Index y = 0; y < p.ny(); ++y) {
            joint.push_back(p(x, y));
            prod.push_back(q[static_cast<std::size_t>(x)] * r[static_cast<std::size_t>(y)]);
        }
    return d_alpha_classical(joint, prod, alpha);
}

ClassicalPartialMinimum minimize_over_y(const Eigen::MatrixXd& p_alpha, std::span<const double> q_x,
                                        double alpha) {
    if (q_x.size() != static_cast<std::size_t>(p_alpha.rows())) throw DimMismatch("minimize_over_y: length");
    Eigen::VectorXd k = Eigen::VectorXd::Zero(p_alpha.cols());
    for (Index x = 0; x < p_alpha.rows(); ++x) {
        const double w = q_x[static_cast<std::size_t>(x)];
        if (w > 0.0) k += p_alpha.row(x).transpose() * std::pow(w, 1.0 - alpha);
    }
    return finish(k, alpha);
}

ClassicalPartialMinimum minimize_over_x(const Eigen::MatrixXd& p_alpha, std::span<const double> r_y,
                                        double alpha) {
    if (r_y.size() != static_cast<std::size_t>(p_alpha.cols())) throw DimMismatch("minimize_over_x: length");
    Eigen::VectorXd k = Eigen::VectorXd::Zero(p_alpha.rows());
    for (Index y = 0; y < p_alpha.cols(); ++y) {
        const double w = r_y[static_cast<std::size_t>(y)];
        if (w > 0.0) k += p_alpha.col(y) * std::pow(w, 1.0 - alpha);
    }
    return finish(k, alpha);
}

Pmf n_x_to_y(const JointPmf& p, const Pmf& q_x, double alpha) {
    check_alpha(alpha);
    check_partial_domain(p.marginal_x().weights(), q_x.weights(), alpha, "N_{X->Y}");
    return Pmf(minimize_over_y(powered(p, alpha), q_x.weights(), alpha).state);
}

Pmf n_y_to_x(const JointPmf& p, const Pmf& r_y, double alpha) {
    check_alpha(alpha);
    check_partial_domain(p.marginal_y().weights(), r_y.weights(), alpha, "N_{Y->X}");
    return Pmf(minimize_over_x(powered(p, alpha), r_y.weights(), alpha).state);
}

BipartiteState cc_embed(const JointPmf& p) {
    Vec diag;
    diag.reserve(static_cast<std::size_t>(p.nx() * p.ny()));
    for (Index x = 0; x < p.nx(); ++x)
        for (Index y = 0; y < p.ny(); ++y) diag.push_back(p(x, y));
    return BipartiteState(p.nx(), p.ny(), HermitianOperator::diagonal(std::span<const double>(diag)));
}

ClassicalLinearConstants classical_linear_constants(const JointPmf& p, std::span<const double> q0,
                                                    double alpha) {
    check_alpha(alpha);
    if (!(alpha > 1.0)) throw InvalidConfig("linear constants require alpha > 1");
    if (q0.size() != static_cast<std::size_t>(p.nx())) throw DimMismatch("classical_linear_constants: length");
    const Eigen::MatrixXd pa = powered(p, alpha);
    const Vec px = p.marginal_x().vec();

    ClassicalLinearConstants k;
    k.gamma = 1.0 - 1.0 / alpha;
    const Eigen::VectorXd rows = pa.rowwise().sum();
    k.lambda_x = min_positive(std::span<const double>(rows.data(), static_cast<std::size_t>(rows.size())));
    k.q_init = restrict_to(Vec(q0.begin(), q0.end()), px);
    if (!dominated(px, k.q_init)) throw DomainViolation("initializer does not dominate P_X");

    const Vec r = minimize_over_y(pa, k.q_init, alpha).state;
    k.q0 = 0.0;
    for (Index x = 0; x < p.nx(); ++x)
        for (Index y = 0; y < p.ny(); ++y)
            if (p(x, y) > 0.0)
                k.q0 += pa(x, y) * std::pow(k.q_init[static_cast<std::size_t>(x)] * r[static_cast<std::size_t>(y)],
                                            1.0 - alpha);
    k.c_x = std::pow(k.lambda_x / k.q0, 1.0 / alpha);
    k.c0 = -2.0 * std::log(std::min(min_positive(k.q_init), k.c_x));
    return k;
}

ClassicalTrace algorithm_classical(const JointPmf& p, const ClassicalConfig& config, bool allow_uncertified) {
    check_config(config);
    const Vec q0 = prepared_initializer(p, config);
    if (config.alpha > 1.0) return run_linear(p, config, q0);
    if (in_sublinear_range(config.alpha)) return run_sublinear(p, config, q0);
    if (!allow_uncertified)
        throw InvalidConfig("alpha = " + std::to_string(config.alpha) +
                            " is outside the certified classical ranges (1/2,1) and (1,inf)");
    return run_uncertified(p, config, q0);
}

ClassicalTrace classical_iterate_fixed(const JointPmf& p, const ClassicalConfig& config, std::size_t iterations) {
    check_alpha(config.alpha);
    const ClassicalMaps maps(p, config.alpha);
    TraceBuilder tb(config.alpha, config.eps0, config.record_states, "fixed", 0.0);
    Iterate it = maps.start(prepared_initializer(p, config));
    tb.record(0, it, ExtendedReal::infinity());
    for (std::size_t n = 1; n <= iterations; ++n) {
        it = maps.step(it);
        tb.record(n, it, ExtendedReal::infinity());
    }
    return tb.finish(it, Termination::uncertified);
}

double classical_delta(const JointPmf& p, double alpha) {
    check_alpha(alpha);
    if (!(p.matrix().minCoeff() > 0.0)) throw NotStrictlyPositive("classical_delta requires P > 0");
    const Eigen::MatrixXd lp = p.matrix().array().log().matrix();
    double best = 0.0;
    for (Index x = 0; x < p.nx(); ++x)
        for (Index x2 = 0; x2 < p.nx(); ++x2)
            for (Index y = 0; y < p.ny(); ++y)
                for (Index y2 = 0; y2 < p.ny(); ++y2)
                    best = std::max(best, lp(x, y) + lp(x2, y2) - lp(x2, y) - lp(x, y2));
    return alpha * best;
}

ClassicalContractionReport classical_contraction_probe(const JointPmf& p, double alpha, std::size_t trials,
                                                       std::uint64_t seed) {
    check_alpha(alpha);
    const ClassicalMaps maps(p, alpha);
    const Vec px = p.marginal_x().vec();
    Rng rng(seed);
    ClassicalContractionReport report;
    report.gamma = std::abs(1.0 - 1.0 / alpha);
    if (p.matrix().minCoeff() > 0.0) report.kappa = std::tanh(classical_delta(p, alpha) / 4.0);
    const std::size_t nx = static_cast<std::size_t>(p.nx());
    for (std::size_t i = 0; i < trials; ++i) {
        const Vec s = restrict_to(random_pmf(nx, rng).vec(), px);
        const Vec t = restrict_to(random_pmf(nx, rng).vec(), px);
        const ProjectiveDistance before = d_h(s, t);
        const ProjectiveDistance after =
            d_h(minimize_over_y(maps.p_alpha(), s, alpha).state, minimize_over_y(maps.p_alpha(), t, alpha).state);
        ++report.trials;
        if (after.value() > report.gamma * before.value() + kContractionSlack) ++report.violations_gamma;
        if (after.value() > report.gamma * report.kappa * before.value() + kContractionSlack)
            ++report.violations_gamma_kappa;
        if (before.is_finite() && before.value() > 0.0)
            report.max_ratio = std::max(report.max_ratio, after.value() / before.value());
    }
    return report;
}

}  // namespace prmi

#include "prmi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "prmi/petz_divergence.hpp"

namespace prmi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_order(double alpha) {
    if (!std::isfinite(alpha) || !(alpha > 0.0)) throw InvalidConfig("alpha must lie in (0, inf)");
    if (alpha == 1.0) throw UnsupportedOrder("alpha = 1: use kl_reference");
}

std::size_t divisions(double step) { return static_cast<std::size_t>(std::ceil(1.0 / step - 1e-9)); }

// All points k / n of the probability simplex of the given length.
std::vector<std::vector<double>> simplex_grid(std::size_t length, std::size_t n) {
    std::vector<std::vector<double>> out;
    std::vector<std::size_t> k(length, 0);
    const auto emit = [&] {
        std::vector<double> q(length);
        for (std::size_t i = 0; i < length; ++i) q[i] = static_cast<double>(k[i]) / static_cast<double>(n);
        out.push_back(std::move(q));
    };
    // Recursive composition of n into `length` parts.
    const auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
        if (pos + 1 == length) {
            k[pos] = left;
            emit();
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            k[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, n);
    return out;
}

struct Bloch {
    double r, theta, phi;
};

std::vector<Bloch> bloch_grid(double step, bool include_pure) {
    const std::size_t n = static_cast<std::size_t>(std::llround(1.0 / step));
    const std::size_t nr = include_pure ? n : n - 1;
    std::vector<Bloch> out;
    out.push_back({0.0, 0.0, 0.0});
    for (std::size_t i = 1; i <= nr; ++i) {
        const double r = static_cast<double>(i) / static_cast<double>(n);
        for (std::size_t k = 0; k <= n; ++k) {
            const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            const bool pole = k == 0 || k == n;
            const std::size_t nphi = pole ? 1 : 2 * n;
            for (std::size_t j = 0; j < nphi; ++j)
                out.push_back({r, theta, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(2 * n)});
        }
    }
    return out;
}

Bloch to_bloch(const HermitianOperator& s) {
    const double x = 2.0 * s(0, 1).real();
    const double y = -2.0 * s(0, 1).imag();
    const double z = (s(0, 0) - s(1, 1)).real();
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r == 0.0) return {0.0, 0.0, 0.0};
    return {r, std::acos(std::clamp(z / r, -1.0, 1.0)), std::atan2(y, x)};
}

bool use_exhaustive(OracleStrategy s, double product_points) {
    if (s == OracleStrategy::exhaustive) return true;
    if (s == OracleStrategy::profiled) return false;
    return product_points <= static_cast<double>(kExhaustiveLimit);
}

double entropy(const HermitianOperator& x) {
    const RVector ev = eig_hermitian(x).values;
    double s = 0.0;
    for (Index i = 0; i < ev.size(); ++i)
        if (ev(i) > 0.0) s -= ev(i) * std::log(ev(i));
    return s;
}

}  // namespace

OracleResult grid_min_classical(const JointPmf& p, double alpha, double step, OracleStrategy strategy) {
    check_order(alpha);
    if (p.nx() > 3 || p.ny() > 3) throw TooLarge("classical oracle supports at most 3x3 alphabets");
    if (!(step > 0.0) || step > 0.1) throw InvalidConfig("classical oracle step must lie in (0, 0.1]");
    const std::size_t n = divisions(step);
    const auto qs = simplex_grid(static_cast<std::size_t>(p.nx()), n);

    OracleResult res;
    res.grid_step = 1.0 / static_cast<double>(n);
    res.min_value = kInf;

    // Size of the second grid: C(n + |Y| - 1, |Y| - 1), counted before building it.
    double ny_points = 1.0;
    for (Index i = 1; i < p.ny(); ++i) ny_points = ny_points * static_cast<double>(n + static_cast<std::size_t>(i)) / static_cast<double>(i);
    const bool exhaustive =
        use_exhaustive(strategy, static_cast<double>(qs.size()) * ny_points);
    res.strategy = exhaustive ? OracleStrategy::exhaustive : OracleStrategy::profiled;

    if (exhaustive) {
        const auto rs = simplex_grid(static_cast<std::size_t>(p.ny()), n);
        std::vector<double> joint, prod(static_cast<std::size_t>(p.nx() * p.ny()));
        for (Index x = 0; x < p.nx(); ++x)
            for (Index y = 0; y < p.ny(); ++y) joint.push_back(p(x, y));
        for (const auto& q : qs)
            for (const auto& r : rs) {
                for (std::size_t x = 0; x < q.size(); ++x)
                    for (std::size_t y = 0; y < r.size(); ++y) prod[x * r.size() + y] = q[x] * r[y];
                const ExtendedReal d = d_alpha_classical(joint, prod, alpha);
                ++res.evaluations;
                if (d.is_finite() && d.value() < res.min_value) {
                    res.min_value = d.value();
                    res.argmin_params = q;
                    res.argmin_params.insert(res.argmin_params.end(), r.begin(), r.end());
                }
            }
        return res;
    }

    // Profiled: for each Q, K(y) = sum_x P(x,y)^alpha Q(x)^(1-alpha) and the best R
    // is K^(1/alpha) normalized.
    const Eigen::MatrixXd pa = p.matrix().unaryExpr([alpha](double v) { return v > 0.0 ? std::pow(v, alpha) : 0.0; });
    const Pmf px = p.marginal_x();
    for (const auto& q : qs) {
        ++res.evaluations;
        bool feasible = alpha > 1.0;
        for (std::size_t x = 0; x < q.size(); ++x) {
            if (alpha > 1.0 && px[x] > 0.0 && q[x] == 0.0) feasible = false;
            if (alpha < 1.0 && px[x] > 0.0 && q[x] > 0.0) feasible = true;
        }
        if (!feasible) continue;
        double t = 0.0;
        std::vector<double> root(static_cast<std::size_t>(p.ny()));
        for (Index y = 0; y < p.ny(); ++y) {
            double k = 0.0;
            for (Index x = 0; x < p.nx(); ++x)
                if (q[static_cast<std::size_t>(x)] > 0.0) k += pa(x, y) * std::pow(q[static_cast<std::size_t>(x)], 1.0 - alpha);
            root[static_cast<std::size_t>(y)] = std::pow(k, 1.0 / alpha);
            t += root[static_cast<std::size_t>(y)];
        }
        const double v = alpha / (alpha - 1.0) * std::log(t);
        if (v < res.min_value) {
            res.min_value = v;
            res.argmin_params = q;
            for (double w : root) res.argmin_params.push_back(w / t);
        }
    }
    return res;
}

HermitianOperator bloch_state(double r, double theta, double phi) {
    const double x = r * std::sin(theta) * std::cos(phi);
    const double y = r * std::sin(theta) * std::sin(phi);
    const double z = r * std::cos(theta);
    CMatrix m(2, 2);
    m << Complex(0.5 * (1.0 + z), 0.0), Complex(0.5 * x, -0.5 * y), Complex(0.5 * x, 0.5 * y),
        Complex(0.5 * (1.0 - z), 0.0);
    return HermitianOperator::hermitian_part(m);
}

OracleResult grid_min_quantum_qubit(const BipartiteState& rho, double alpha, double step,
                                    OracleStrategy strategy) {
    check_order(alpha);
    if (rho.d_a() != 2 || rho.d_b() != 2) throw TooLarge("quantum oracle supports 2 (x) 2 states only");
    if (!(step > 0.0) || step > 0.5) throw InvalidConfig("quantum oracle step must lie in (0, 0.5]");
    const std::vector<Bloch> grid = bloch_grid(step, alpha < 1.0);
    std::vector<HermitianOperator> states;
    states.reserve(grid.size());
    for (const Bloch& b : grid) states.push_back(bloch_state(b.r, b.theta, b.phi));

    OracleResult res;
    res.grid_step = 1.0 / std::round(1.0 / step);
    res.min_value = kInf;
    const bool exhaustive =
        use_exhaustive(strategy, static_cast<double>(states.size()) * static_cast<double>(states.size()));
    res.strategy = exhaustive ? OracleStrategy::exhaustive : OracleStrategy::profiled;

    if (exhaustive) {
        for (std::size_t i = 0; i < states.size(); ++i)
            for (std::size_t j = 0; j < states.size(); ++j) {
                const DivergenceValue d = d_alpha(rho.op(), kron(states[i], states[j]), alpha);
                ++res.evaluations;
                if (d.is_finite() && d.value() < res.min_value) {
                    res.min_value = d.value();
                    res.argmin_params = {grid[i].r, grid[i].theta, grid[i].phi,
                                         grid[j].r, grid[j].theta, grid[j].phi};
                }
            }
        return res;
    }

    const HermitianOperator rho_alpha = power_on_support(rho.op(), alpha);
    const HermitianOperator rho_a = rho.marginal_a();
    for (std::size_t i = 0; i < states.size(); ++i) {
        ++res.evaluations;
        const HermitianOperator& s = states[i];
        const bool feasible = alpha > 1.0 ? is_dominated(rho_a, s) : !is_orthogonal(rho_a, s);
        if (!feasible) continue;
        const HermitianOperator k = partial_trace_a_weighted(rho_alpha, power_on_support(s, 1.0 - alpha), 2, 2);
        const HermitianOperator root = power_on_support(k, 1.0 / alpha);
        const double t = root.trace();
        if (!(t > 0.0)) continue;
        const double v = alpha / (alpha - 1.0) * std::log(t);
        if (v < res.min_value) {
            res.min_value = v;
            const Bloch b = to_bloch(root * (1.0 / t));
            res.argmin_params = {grid[i].r, grid[i].theta, grid[i].phi, b.r, b.theta, b.phi};
        }
    }
    return res;
}

double kl_reference(const BipartiteState& rho) {
    return entropy(rho.marginal_a()) + entropy(rho.marginal_b()) - entropy(rho.op());
}

}  // namespace prmi

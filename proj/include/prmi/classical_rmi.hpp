#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "prmi/am_engine.hpp"
#include "prmi/extended_real.hpp"
#include "prmi/operator_core.hpp"
#include "prmi/random_states.hpp"

namespace prmi {

// Classical (probability mass function) counterpart of the quantum engine.

/// Nonnegative weights summing to one (within 1e-12).
class Pmf {
public:
    Pmf() = default;
    explicit Pmf(std::vector<double> weights);

    static Pmf uniform(std::size_t n);

    std::size_t size() const noexcept { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    std::span<const double> weights() const noexcept { return w_; }
    const std::vector<double>& vec() const noexcept { return w_; }

private:
    std::vector<double> w_;
};

/// Joint PMF P(x, y) stored as an |X| x |Y| matrix.
class JointPmf {
public:
    explicit JointPmf(Eigen::MatrixXd weights);

    Index nx() const noexcept { return w_.rows(); }
    Index ny() const noexcept { return w_.cols(); }
    double operator()(Index x, Index y) const { return w_(x, y); }
    const Eigen::MatrixXd& matrix() const noexcept { return w_; }

    Pmf marginal_x() const;
    Pmf marginal_y() const;

private:
    Eigen::MatrixXd w_;
};

/// Uniform (flat Dirichlet) random PMFs; all weights are strictly positive.
Pmf random_pmf(std::size_t n, Rng& rng);
JointPmf random_joint_pmf(Index nx, Index ny, Rng& rng);
JointPmf product_pmf(const Pmf& px, const Pmf& py);

/// Renyi divergence (1/(alpha-1)) log sum_{supp P} P^alpha Q^(1-alpha) of two
/// nonnegative arrays, with y/0 = inf for alpha > 1.
ExtendedReal d_alpha_classical(std::span<const double> p, std::span<const double> q, double alpha);
/// D_alpha(P_XY || Q_X R_Y).
ExtendedReal d_alpha_classical(const JointPmf& p, const Pmf& q, const Pmf& r, double alpha);

/// Partial minimizer R_Y given Q_X (classical analogue of PartialMinimum).
struct ClassicalPartialMinimum {
    std::vector<double> state;
    double q = 0.0;
    double value = 0.0;
};

ClassicalPartialMinimum minimize_over_y(const Eigen::MatrixXd& p_alpha, std::span<const double> q_x,
                                        double alpha);
ClassicalPartialMinimum minimize_over_x(const Eigen::MatrixXd& p_alpha, std::span<const double> r_y,
                                        double alpha);

/// N_{X->Y}; throws DomainViolation unless P_X << Q_X (alpha > 1) or
/// P_X not perp Q_X (alpha < 1).
Pmf n_x_to_y(const JointPmf& p, const Pmf& q_x, double alpha);
/// N_{Y->X}; mirror of n_x_to_y.
Pmf n_y_to_x(const JointPmf& p, const Pmf& r_y, double alpha);

/// Diagonal density operator with <xy|rho|xy> = P(x, y).
BipartiteState cc_embed(const JointPmf& p);

struct ClassicalConfig {
    double alpha = 1.5;
    double eps0 = 1e-6;
    InitKind init = InitKind::marginal_rho_a;
    std::vector<double> init_pmf;  // used by explicit_state only
    std::size_t max_iter = 100000;
    bool record_states = false;
};

using ClassicalTrace = BasicTrace<std::vector<double>>;

struct ClassicalLinearConstants {
    double gamma = 0.0;
    double c0 = 0.0;
    double lambda_x = 0.0;
    double q0 = 0.0;
    double c_x = 0.0;
    std::vector<double> q_init;  // restricted initializer
};

/// Classical analogue of linear_constants for alpha > 1 (any alpha > 1).
ClassicalLinearConstants classical_linear_constants(const JointPmf& p, std::span<const double> q0,
                                                    double alpha);

/// Certified classical alternating minimization.
///   alpha > 1:          linear certificate with the classical constants;
///   alpha in (1/2, 1):  sublinear schedule, c0 from sublinear_constants on cc_embed(P).
/// Other orders throw InvalidConfig unless `allow_uncertified`.
ClassicalTrace algorithm_classical(const JointPmf& p, const ClassicalConfig& config,
                                   bool allow_uncertified = false);

/// Exactly `iterations` full classical iterations, no certificate.
ClassicalTrace classical_iterate_fixed(const JointPmf& p, const ClassicalConfig& config,
                                       std::size_t iterations);

/// delta = log max P(x,y)^a P(x',y')^a / (P(x',y)^a P(x,y')^a) for strictly positive P.
/// Throws NotStrictlyPositive otherwise.
double classical_delta(const JointPmf& p, double alpha);

struct ClassicalContractionReport {
    std::size_t trials = 0;
    double gamma = 0.0;
    double kappa = 1.0;  // tanh(delta/4) when P > 0, else 1
    double max_ratio = 0.0;
    std::size_t violations_gamma = 0;        // ratio above gamma + 1e-9
    std::size_t violations_gamma_kappa = 0;  // ratio above gamma * kappa + 1e-9
};

ClassicalContractionReport classical_contraction_probe(const JointPmf& p, double alpha, std::size_t trials,
                                                       std::uint64_t seed = 1);

}  // namespace prmi

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "prmi/extended_real.hpp"
#include "prmi/operator_core.hpp"
#include "prmi/petz_divergence.hpp"

namespace prmi {

// Alternating minimization of D_alpha(rho_AB || sigma_A (x) tau_B) over product
// states, with certified stopping rules:
//   * alpha in (1, 2]:   linear bound driven by the contraction factor
//                        gamma = 1 - 1/alpha in Hilbert's projective metric;
//   * alpha in (1/2, 1): sublinear bound c0 * sqrt(x_{n-1} - x_n).
//
// One full iteration maps sigma^(n) -> tau^(n) = N_{A->B}(sigma^(n)) and
// sigma^(n+1) = N_{B->A}(tau^(n)); x_n = D_alpha(rho || sigma^(n) (x) tau^(n)).

enum class InitKind { marginal_rho_a, uniform, explicit_state };

struct Initializer {
    InitKind kind = InitKind::marginal_rho_a;
    HermitianOperator state;  // used by explicit_state only

    static Initializer marginal() { return {}; }
    static Initializer uniform() { return {InitKind::uniform, {}}; }
    static Initializer explicit_state(HermitianOperator s) {
        return {InitKind::explicit_state, std::move(s)};
    }
};

struct AmConfig {
    double alpha = 1.5;
    double eps0 = 1e-6;
    Initializer init;
    std::size_t max_iter = 100000;
    SupportCutoff cut;
    /// Keep a state snapshot for every iteration instead of first and last only.
    bool record_states = false;
};

enum class Termination { certificate, max_iter, uncertified };

const char* to_string(Termination t);

struct IterationRecord {
    std::size_t n = 0;
    double x = 0.0;
    /// Certified bound on |x_n - I_alpha| (+inf when none is available yet).
    ExtendedReal eps;
    /// Q_alpha(rho || sigma^(n) (x) tau^(n)) = exp((alpha - 1) x_n).
    double q = 0.0;
    double wall_seconds = 0.0;
};

template <class State>
struct StateSnapshot {
    std::size_t n = 0;
    State sigma;
    State tau;
};

template <class State>
struct BasicTrace {
    double alpha = 0.0;
    double eps0 = 0.0;
    std::string algorithm;
    /// Constant entering the certificate (c0 of the linear or sublinear bound).
    double c0 = 0.0;
    std::vector<IterationRecord> records;
    std::vector<StateSnapshot<State>> snapshots;
    double final_x = 0.0;
    State final_sigma_a{};
    State final_tau_b{};
    Termination terminated_by = Termination::max_iter;

    ExtendedReal final_eps() const { return records.empty() ? ExtendedReal::infinity() : records.back().eps; }
    std::size_t iterations() const { return records.empty() ? 0 : records.back().n; }
    bool certified() const { return terminated_by == Termination::certificate; }
};

using ConvergenceTrace = BasicTrace<HermitianOperator>;

/// Iteration maps for one (rho_AB, alpha) pair with rho_AB^alpha cached.
class AlternatingMinimizer {
public:
    AlternatingMinimizer(BipartiteState rho, double alpha, SupportCutoff cut = {});

    const BipartiteState& rho() const noexcept { return rho_; }
    double alpha() const noexcept { return alpha_; }
    SupportCutoff cut() const noexcept { return cut_; }
    const HermitianOperator& rho_alpha() const noexcept { return rho_alpha_; }
    const HermitianOperator& rho_a() const noexcept { return rho_a_; }
    const HermitianOperator& rho_b() const noexcept { return rho_b_; }

    /// N_{A->B}(sigma_A) together with q and x at (sigma_A, N_{A->B}(sigma_A)).
    PartialMinimum a_to_b(const HermitianOperator& sigma_a) const;
    /// N_{B->A}(tau_B) together with q and x at (N_{B->A}(tau_B), tau_B).
    PartialMinimum b_to_a(const HermitianOperator& tau_b) const;

private:
    BipartiteState rho_;
    double alpha_;
    SupportCutoff cut_;
    HermitianOperator rho_alpha_;
    HermitianOperator rho_a_;
    HermitianOperator rho_b_;
};

/// N_{A->B}; throws DomainViolation unless rho_A << sigma_A (alpha > 1) or
/// rho_A not perp sigma_A (alpha < 1).
HermitianOperator n_a_to_b(const BipartiteState& rho, const HermitianOperator& sigma_a, double alpha,
                           SupportCutoff cut = {});
/// N_{B->A}; mirror of n_a_to_b.
HermitianOperator n_b_to_a(const BipartiteState& rho, const HermitianOperator& tau_b, double alpha,
                           SupportCutoff cut = {});

/// rho_A^0 sigma0 rho_A^0 / tr[rho_A^0 sigma0]. Throws OrthogonalInitializer
/// when tr[rho_A^0 sigma0] is at or below the cutoff.
HermitianOperator restrict_initializer(const HermitianOperator& sigma0, const HermitianOperator& rho_a,
                                       SupportCutoff cut = {});

/// sigma_A^(0) selected by `init` (before restriction).
HermitianOperator initial_state(const BipartiteState& rho, const Initializer& init);

struct LinearConstants {
    double gamma = 0.0;     // 1 - 1/alpha
    double c0 = 0.0;        // bound on d_H(restricted sigma0, minimizer)
    double lambda_a = 0.0;  // min nonzero eig of tr_B[rho^alpha]
    double lambda_b = 0.0;  // min nonzero eig of tr_A[rho^alpha]
    double q0 = 0.0;        // Q_alpha(rho || sigma0~ (x) N_{A->B}(sigma0~))
    double c_a = 0.0;       // (lambda_a / q0)^(1/alpha), floor on spec(sigma^(n+1))
    double c_b = 0.0;       // (lambda_b / q0)^(1/alpha), floor on spec(tau^(n))
    double lambda_sigma0 = 0.0;
    HermitianOperator sigma0;  // restricted initializer
};

/// Constants of the linear certificate for alpha in (1, 2].
LinearConstants linear_constants(const BipartiteState& rho, const HermitianOperator& sigma0,
                                 double alpha, SupportCutoff cut = {});

struct SublinearConstants {
    double lambda_a = 0.0;
    double lambda_b = 0.0;
    double lambda_a0 = 0.0;  // min nonzero eig of the restricted initializer
    double c0 = 0.0;
    double c_a = 0.0;  // floor on spec(sigma^(n))
    double c_b = 0.0;  // floor on spec(tau^(n))
    HermitianOperator sigma0;
};

/// Constants of the sublinear certificate for alpha in (1/2, 1).
SublinearConstants sublinear_constants(const BipartiteState& rho, const HermitianOperator& sigma0,
                                       double alpha, SupportCutoff cut = {});

/// (1/|alpha-1|) (exp(|alpha-1| (1+gamma) gamma^(2n) c0) - 1) with gamma = |1 - 1/alpha|.
ExtendedReal linear_error_bound(double alpha, double c0, std::size_t n);

/// Certified alternating minimization for alpha in (1, 2].
ConvergenceTrace algorithm1(const BipartiteState& rho, const AmConfig& config);
/// Certified alternating minimization for alpha in (1/2, 1).
ConvergenceTrace algorithm2(const BipartiteState& rho, const AmConfig& config);

/// Exactly `iterations` full iterations without any certificate; every record
/// has eps = +inf. Accepts any alpha in (0,1) u (1,inf).
ConvergenceTrace iterate_fixed(const BipartiteState& rho, const AmConfig& config, std::size_t iterations);

/// Uncertified iteration until |x_{n-1} - x_n| < eps0 or max_iter.
ConvergenceTrace run_uncertified(const BipartiteState& rho, const AmConfig& config);

/// Picks algorithm1 / algorithm2 by the range of alpha. Outside the certified
/// ranges, runs run_uncertified when `allow_uncertified`, else throws InvalidConfig.
ConvergenceTrace solve(const BipartiteState& rho, const AmConfig& config, bool allow_uncertified = false);

bool in_linear_range(double alpha);
bool in_sublinear_range(double alpha);

struct ContractionReport {
    std::size_t trials = 0;
    double gamma = 0.0;
    double max_ratio = 0.0;
    std::size_t violations = 0;  // ratio > gamma + 1e-9
};

/// Samples pairs sigma, sigma' ~ rho_A and compares d_H(N(sigma), N(sigma'))
/// against gamma d_H(sigma, sigma').
ContractionReport contraction_probe(const BipartiteState& rho, double alpha, std::size_t trials,
                                    std::uint64_t seed = 1, SupportCutoff cut = {});

struct KappaEstimate {
    double delta = 0.0;  // lower estimate of the projective diameter
    double kappa = 0.0;  // tanh(delta / 4)
    std::size_t vectors = 0;
};

/// Lower estimate of the Birkhoff ratio of sigma -> tr_A[rho^alpha sigma] by
/// maximizing d_H(<phi|rho^alpha|phi>, <psi|rho^alpha|psi>) over the
/// computational basis of A plus `samples` Haar-random unit vectors.
/// Diagnostic only. Throws NotStrictlyPositive unless rho > 0.
KappaEstimate kappa_estimate(const BipartiteState& rho, double alpha, std::size_t samples,
                             std::uint64_t seed = 1, SupportCutoff cut = {});

}  // namespace prmi

#include <doctest.h>

#include <cmath>

#include "prmi/am_engine.hpp"
#include "prmi/hilbert_metric.hpp"
#include "prmi/random_states.hpp"
#include "test_support.hpp"

using namespace prmi;
using prmi::test::max_diff;

namespace {

AmConfig make_config(double alpha, double eps0) {
    AmConfig c;
    c.alpha = alpha;
    c.eps0 = eps0;
    return c;
}

// rho on C^3 (x) C^2 whose A-marginal has rank 2 (supported on the first two basis vectors).
BipartiteState rank_two_marginal_state(Rng& rng) {
    const BipartiteState small = random_bipartite_state(2, 2, rng);
    CMatrix m = CMatrix::Zero(6, 6);
    m.topLeftCorner(4, 4) = small.op().matrix();
    return BipartiteState(3, 2, HermitianOperator(m));
}

double min_eig(const HermitianOperator& x) { return eig_hermitian(x).values(x.dim() - 1); }

}  // namespace

TEST_CASE("iteration maps: fixed points and examples") {
    Rng rng(89);
    const BipartiteState prod = random_product_state(2, 3, rng);
    const BipartiteState mc = maximally_correlated_state(2);
    const HermitianOperator half = HermitianOperator::identity(2) * 0.5;
    for (double a : {0.6, 0.75, 1.5, 2.0, 3.0}) {
        CHECK(max_diff(n_a_to_b(prod, prod.marginal_a(), a), prod.marginal_b()) < 1e-9);
        CHECK(max_diff(n_b_to_a(prod, prod.marginal_b(), a), prod.marginal_a()) < 1e-9);
        CHECK(max_diff(n_a_to_b(mc, half, a), half) < 1e-12);
        CHECK(max_diff(n_b_to_a(mc, half, a), half) < 1e-12);
    }
}

TEST_CASE("iteration maps: support, trace and swap symmetry") {
    Rng rng(97);
    for (int i = 0; i < 10; ++i) {
        const BipartiteState rho = random_bipartite_state(2, 2, rng);
        const HermitianOperator s = random_density(2, rng);
        for (double a : {0.75, 1.5}) {
            const HermitianOperator t = n_a_to_b(rho, s, a);
            CHECK(std::abs(t.trace() - 1.0) < 1e-12);
            CHECK(support_relation(t, rho.marginal_b()) == SupportRelation::equal_support);
        }
    }
    // Exchange-symmetric state: N_{B->A}(rho, t) equals N_{A->B}(rho, t).
    for (int i = 0; i < 5; ++i) {
        const BipartiteState r = random_bipartite_state(2, 2, rng);
        const CMatrix swap = test::swap_unitary(2);
        const HermitianOperator sym =
            HermitianOperator::hermitian_part(0.5 * (r.op().matrix() + swap * r.op().matrix() * swap.adjoint()));
        const BipartiteState rho(2, 2, sym);
        const HermitianOperator t = random_density(2, rng);
        for (double a : {0.75, 1.5}) CHECK(max_diff(n_b_to_a(rho, t, a), n_a_to_b(rho, t, a)) < 1e-12);
    }
    // Domain violations.
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = 1.0;
    const BipartiteState pure(2, 2, HermitianOperator(m));
    CHECK_THROWS_AS(n_a_to_b(pure, HermitianOperator::diagonal({0.0, 1.0}), 1.5), DomainViolation);
    CHECK_THROWS_AS(n_b_to_a(pure, HermitianOperator::diagonal({0.0, 1.0}), 0.75), DomainViolation);
    CHECK_THROWS_AS(n_a_to_b(pure, HermitianOperator::identity(3) * (1.0 / 3), 1.5), DimMismatch);
    CHECK_THROWS_AS(n_a_to_b(pure, HermitianOperator::identity(2) * 0.5, 1.0), UnsupportedOrder);
}

TEST_CASE("initializer restriction") {
    Rng rng(101);
    const HermitianOperator full = random_density(2, rng);
    CHECK(max_diff(restrict_initializer(full, random_density(2, rng)), full) < 1e-14);
    CHECK(max_diff(restrict_initializer(HermitianOperator::identity(2) * 0.5, HermitianOperator::diagonal({1.0, 0.0})),
                   HermitianOperator::diagonal({1.0, 0.0})) < 1e-14);
    CHECK_THROWS_AS(
        restrict_initializer(HermitianOperator::diagonal({0.0, 1.0}), HermitianOperator::diagonal({1.0, 0.0})),
        OrthogonalInitializer);

    SUBCASE("map output unchanged when the restriction commutes or is rank one") {
        // Rank-one marginal: every compression is proportional to the same projector.
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
        v(0) = std::sqrt(0.3);
        v(1) = std::sqrt(0.7);
        const BipartiteState rank_one(2, 2, HermitianOperator::projector(v));
        for (double a : {0.75, 1.5, 2.0}) {
            const HermitianOperator s = random_density(2, rng);
            CHECK(max_diff(n_a_to_b(rank_one, s, a),
                           n_a_to_b(rank_one, restrict_initializer(s, rank_one.marginal_a()), a)) < 1e-10);
        }
        const BipartiteState rho = rank_two_marginal_state(rng);
        const HermitianOperator diag = HermitianOperator::diagonal({0.2, 0.5, 0.3});
        for (double a : {0.75, 1.5, 2.0})
            CHECK(max_diff(n_a_to_b(rho, diag, a), n_a_to_b(rho, restrict_initializer(diag, rho.marginal_a()), a)) <
                  1e-10);
    }
    SUBCASE("restriction matters for initializers not commuting with the support projector") {
        // Documented exception: the map sees P sigma^(1-a) P, which differs from
        // (P sigma P)^(1-a) unless sigma commutes with P.
        const BipartiteState rho = rank_two_marginal_state(rng);
        const HermitianOperator s = random_density(3, rng);
        CHECK(max_diff(n_a_to_b(rho, s, 1.5), n_a_to_b(rho, restrict_initializer(s, rho.marginal_a()), 1.5)) > 1e-4);
    }
}

TEST_CASE("linear constants") {
    const BipartiteState mixed = maximally_mixed_state(2, 2);
    const HermitianOperator half = HermitianOperator::identity(2) * 0.5;
    const LinearConstants k = linear_constants(mixed, half, 2.0);
    // rho^2 = I/16, tr_B rho^2 = I/8, N(I/2) = I/2, Q_2(I/4 || I/4) = 1.
    CHECK(k.gamma == doctest::Approx(0.5));
    CHECK(k.lambda_a == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(k.q0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(k.c_a == doctest::Approx(std::sqrt(0.125)).epsilon(1e-12));
    CHECK(k.c0 == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(linear_constants(mixed, half, 1.25).gamma == doctest::Approx(0.2));
    CHECK_THROWS_AS(linear_constants(mixed, half, 0.75), InvalidConfig);

    Rng rng(103);
    for (int i = 0; i < 5; ++i) {
        const BipartiteState rho = random_bipartite_state(2, 2, rng);
        for (double a : {1.5, 2.0}) {
            const LinearConstants lc = linear_constants(rho, rho.marginal_a(), a);
            CHECK(lc.c0 >= 0.0);
            const ConvergenceTrace t = iterate_fixed(rho, make_config(a, 1e-6), 300);
            CHECK(lc.c0 >= d_h(lc.sigma0, t.final_sigma_a).value() - 1e-6);
        }
    }
}

TEST_CASE("sublinear constants") {
    const BipartiteState mixed = maximally_mixed_state(2, 2);
    const HermitianOperator half = HermitianOperator::identity(2) * 0.5;
    const SublinearConstants k = sublinear_constants(mixed, half, 0.75);
    CHECK(k.lambda_a == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(k.lambda_b == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(k.lambda_a0 == doctest::Approx(0.5));
    CHECK(std::abs(k.c0 - 4.0 * std::sqrt(5.0)) < 1e-9);
    CHECK_THROWS_AS(sublinear_constants(mixed, half, 1.5), InvalidConfig);

    Rng rng(107);
    const BipartiteState rho = random_bipartite_state(2, 2, rng);
    const HermitianOperator s = random_density(2, rng);
    CHECK(sublinear_constants(rho, s, 0.75).c0 ==
          doctest::Approx(sublinear_constants(rho, restrict_initializer(s, rho.marginal_a()), 0.75).c0));
}

TEST_CASE("linear error bound") {
    for (double a : {1.25, 1.5, 2.0}) {
        const double g = 1.0 - 1.0 / a;
        double prev = INFINITY;
        for (std::size_t n = 0; n < 30; ++n) {
            const double expected = (std::exp((a - 1.0) * (1.0 + g) * std::pow(g, 2.0 * n) * 1.7) - 1.0) / (a - 1.0);
            const ExtendedReal e = linear_error_bound(a, 1.7, n);
            CHECK(e.value() == doctest::Approx(expected).epsilon(1e-12));
            CHECK(e.value() <= prev);
            prev = e.value();
        }
    }
    CHECK(linear_error_bound(2.0, 1e6, 0).is_infinite());
}

TEST_CASE("algorithm 1") {
    Rng rng(109);
    SUBCASE("product state starts at the minimum") {
        const BipartiteState prod = random_product_state(2, 2, rng);
        const ConvergenceTrace t = algorithm1(prod, make_config(1.5, 1e-6));
        CHECK(t.certified());
        CHECK(std::abs(t.records[0].x) < 1e-10);
        CHECK(std::abs(t.final_x) < 1e-10);
    }
    SUBCASE("maximally mixed state") {
        const ConvergenceTrace t = algorithm1(maximally_mixed_state(2, 2), make_config(2.0, 1e-6));
        CHECK(t.certified());
        CHECK(std::abs(t.final_x) < 1e-6);
        CHECK(t.algorithm == "linear");
    }
    SUBCASE("trace structure on random states") {
        for (int i = 0; i < 5; ++i) {
            const BipartiteState rho = random_bipartite_state(2, 3, rng);
            AmConfig c = make_config(1.5, 1e-8);
            c.record_states = true;
            const ConvergenceTrace t = algorithm1(rho, c);
            REQUIRE(t.certified());
            CHECK(t.final_eps().value() < 1e-8);
            CHECK(t.snapshots.size() == t.records.size());
            for (std::size_t n = 0; n < t.records.size(); ++n) {
                CHECK(t.records[n].n == n);
                CHECK(std::abs(t.records[n].q - std::exp(0.5 * t.records[n].x)) < 1e-10);
                if (n > 0) {
                    CHECK(t.records[n].x <= t.records[n - 1].x + 1e-10);
                    CHECK(t.records[n].eps.value() <= t.records[n - 1].eps.value());
                }
            }
            // Fixed-point consistency at the final pair.
            CHECK(max_diff(n_a_to_b(rho, t.final_sigma_a, 1.5), t.final_tau_b) < 1e-8);
            CHECK(max_diff(n_b_to_a(rho, t.final_tau_b, 1.5), t.final_sigma_a) < 1e-8);
        }
    }
    SUBCASE("iteration cap is flagged") {
        const BipartiteState rho = random_bipartite_state(2, 2, rng);
        AmConfig c = make_config(1.5, 1e-14);
        c.max_iter = 2;
        const ConvergenceTrace t = algorithm1(rho, c);
        CHECK(t.terminated_by == Termination::max_iter);
        CHECK(t.iterations() == 2);
        CHECK_FALSE(t.certified());
    }
    SUBCASE("configuration errors") {
        const BipartiteState rho = random_bipartite_state(2, 2, rng);
        CHECK_THROWS_AS(algorithm1(rho, make_config(0.75, 1e-6)), InvalidConfig);
        CHECK_THROWS_AS(algorithm1(rho, make_config(1.5, 0.0)), InvalidConfig);
        AmConfig c = make_config(1.5, 1e-6);
        c.init = Initializer::explicit_state(HermitianOperator::identity(3) * (1.0 / 3));
        CHECK_THROWS_AS(algorithm1(rho, c), DimMismatch);
    }
}

TEST_CASE("algorithm 2") {
    Rng rng(113);
    SUBCASE("product state terminates after one iteration") {
        const BipartiteState prod = random_product_state(2, 2, rng);
        const ConvergenceTrace t = algorithm2(prod, make_config(0.75, 1e-4));
        CHECK(t.certified());
        CHECK(t.iterations() == 1);
        CHECK(std::abs(t.final_x) < 1e-10);
        CHECK(t.records[0].eps.is_infinite());
    }
    SUBCASE("maximally mixed state") {
        const ConvergenceTrace t = algorithm2(maximally_mixed_state(2, 2), make_config(0.75, 1e-4));
        CHECK(t.certified());
        CHECK(std::abs(t.final_x) < 1e-4);
    }
    SUBCASE("certificate against a long run") {
        for (int i = 0; i < 5; ++i) {
            const BipartiteState rho = random_bipartite_state(2, 2, rng);
            for (double a : {0.6, 0.75, 0.9}) {
                const ConvergenceTrace t = algorithm2(rho, make_config(a, 1e-4));
                REQUIRE(t.certified());
                const double x_long = iterate_fixed(rho, make_config(a, 1e-4), 5000).final_x;
                CHECK(t.final_x - x_long <= 1e-4);
                CHECK(t.final_x >= x_long - 1e-12);
            }
        }
    }
}

TEST_CASE("spectrum floors along runs") {
    Rng rng(127);
    for (int i = 0; i < 5; ++i) {
        const BipartiteState rho = random_bipartite_state(2, 3, rng);
        for (double a : {0.6, 0.75, 0.9}) {
            AmConfig c = make_config(a, 1e-5);
            c.record_states = true;
            const ConvergenceTrace t = algorithm2(rho, c);
            const SublinearConstants k = sublinear_constants(rho, rho.marginal_a(), a);
            for (const auto& s : t.snapshots) {
                CHECK(min_eig(s.sigma) >= k.c_a - 1e-12);
                CHECK(min_eig(s.tau) >= k.c_b - 1e-12);
            }
        }
        for (double a : {1.5, 2.0}) {
            AmConfig c = make_config(a, 1e-8);
            c.record_states = true;
            const ConvergenceTrace t = algorithm1(rho, c);
            const LinearConstants k = linear_constants(rho, rho.marginal_a(), a);
            for (const auto& s : t.snapshots) {
                if (s.n >= 1) CHECK(min_eig(s.sigma) >= k.c_a - 1e-12);
                CHECK(min_eig(s.tau) >= k.c_b - 1e-12);
            }
        }
    }
}

TEST_CASE("dispatch and uncertified orders") {
    Rng rng(131);
    const BipartiteState rho = random_bipartite_state(2, 2, rng);
    CHECK(solve(rho, make_config(1.5, 1e-6)).algorithm == "linear");
    CHECK(solve(rho, make_config(0.75, 1e-4)).algorithm == "sublinear");
    CHECK_THROWS_AS(solve(rho, make_config(0.3, 1e-6)), InvalidConfig);
    CHECK_THROWS_AS(solve(rho, make_config(2.5, 1e-6)), InvalidConfig);
    CHECK_THROWS_AS(solve(rho, make_config(1.0, 1e-6)), UnsupportedOrder);
    const ConvergenceTrace t = solve(rho, make_config(2.5, 1e-10), true);
    CHECK(t.terminated_by == Termination::uncertified);
    CHECK(t.final_eps().is_infinite());
    CHECK(std::string(to_string(Termination::certificate)) == "certificate");
}

TEST_CASE("order below one half: uniform fixed point is not optimal") {
    AmConfig c = make_config(0.3, 1e-6);
    c.init = Initializer::uniform();
    const ConvergenceTrace t = iterate_fixed(maximally_correlated_state(2), c, 50);
    for (const auto& r : t.records) CHECK(std::abs(r.x - std::log(2.0)) < 1e-10);
    CHECK(t.final_x - 0.3 / 0.7 * std::log(2.0) > 0.39);
}

TEST_CASE("linear rate in the projective metric") {
    Rng rng(137);
    for (double a : {1.5, 2.0}) {
        const double g = 1.0 - 1.0 / a;
        for (int i = 0; i < 3; ++i) {
            const BipartiteState rho = random_bipartite_state(2, 2, rng);
            AmConfig c = make_config(a, 1e-6);
            c.record_states = true;
            const ConvergenceTrace t = iterate_fixed(rho, c, 200);
            const HermitianOperator& hat = t.snapshots.back().sigma;
            const double d0 = d_h(t.snapshots[0].sigma, hat).value();
            for (std::size_t n = 1; n <= 20; ++n)
                CHECK(d_h(t.snapshots[n].sigma, hat).value() <= std::pow(g, 2.0 * n) * d0 * (1.0 + 1e-6) + 1e-12);
        }
    }
}

TEST_CASE("contraction probe") {
    const ContractionReport mixed = contraction_probe(maximally_mixed_state(2, 2), 2.0, 50);
    CHECK(mixed.max_ratio <= 0.5 + 1e-9);
    CHECK(mixed.violations == 0);
    Rng rng(139);
    for (int i = 0; i < 3; ++i) {
        const BipartiteState rho = random_bipartite_state(2, 3, rng);
        for (double a : {1.25, 1.5, 2.0}) {
            const ContractionReport r = contraction_probe(rho, a, 100, 5 + static_cast<std::uint64_t>(i));
            CHECK(r.trials == 100);
            CHECK(r.violations == 0);
            CHECK(r.max_ratio <= r.gamma + 1e-9);
        }
    }
}

TEST_CASE("kappa estimate") {
    CHECK(kappa_estimate(maximally_mixed_state(2, 2), 1.5, 20).delta == doctest::Approx(0.0).epsilon(1e-10));

    // Diagonal state: basis vectors already realize the classical formula.
    const double p[2][2] = {{0.4, 0.1}, {0.2, 0.3}};
    const double a = 1.5;
    const BipartiteState rho(2, 2, HermitianOperator::diagonal({p[0][0], p[0][1], p[1][0], p[1][1]}));
    const double expected = a * std::abs(std::log(p[0][0] * p[1][1] / (p[1][0] * p[0][1])));
    const KappaEstimate k = kappa_estimate(rho, a, 0);
    CHECK(k.delta == doctest::Approx(expected).epsilon(1e-10));
    CHECK(k.kappa == doctest::Approx(std::tanh(expected / 4)).epsilon(1e-10));

    Rng rng(149);
    const BipartiteState r = random_bipartite_state(2, 2, rng);
    double prev = 0.0;
    for (std::size_t s : {0u, 5u, 20u, 80u}) {
        const double kappa = kappa_estimate(r, 1.5, s, 3).kappa;
        CHECK(kappa >= prev);
        CHECK(kappa < 1.0);
        prev = kappa;
    }
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = 1.0;
    CHECK_THROWS_AS(kappa_estimate(BipartiteState(2, 2, HermitianOperator(m)), 1.5, 4), NotStrictlyPositive);
}

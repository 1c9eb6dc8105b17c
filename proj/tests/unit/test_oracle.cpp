#include <doctest.h>

#include <cmath>

#include "prmi/am_engine.hpp"
#include "prmi/classical_rmi.hpp"
#include "prmi/oracle.hpp"
#include "prmi/petz_divergence.hpp"
#include "test_support.hpp"

using namespace prmi;
using prmi::test::max_diff;

namespace {

JointPmf joint2(double a, double b, double c, double d) {
    Eigen::MatrixXd m(2, 2);
    m << a, b, c, d;
    return JointPmf(m);
}

double engine_value(const BipartiteState& rho, double a, std::size_t iterations = 500) {
    AmConfig c;
    c.alpha = a;
    return iterate_fixed(rho, c, iterations).final_x;
}

double entropy(const HermitianOperator& x) {
    double s = 0.0;
    for (double l : eig_hermitian(x).values)
        if (l > 1e-15) s -= l * std::log(l);
    return s;
}

}  // namespace

TEST_CASE("classical grid minimum: reference values") {
    const JointPmf prod = product_pmf(Pmf({0.3, 0.7}), Pmf({0.6, 0.4}));
    for (double a : {0.3, 0.75, 2.0})
        CHECK(std::abs(grid_min_classical(prod, a, 0.1).min_value) < 1e-12);

    // Diagonal distribution at a = 0.3: point masses on a shared outcome give
    // a/(1-a) log 2, below the log 2 of the uniform pair.
    const JointPmf diag = joint2(0.5, 0.0, 0.0, 0.5);
    const OracleResult r = grid_min_classical(diag, 0.3, 0.05);
    CHECK(r.min_value == doctest::Approx(0.3 / 0.7 * std::log(2.0)).epsilon(1e-9));
    CHECK(r.argmin_params.size() == 4);
    CHECK(r.grid_step == 0.05);
    CHECK(r.evaluations > 0);

    const JointPmf j = joint2(0.4, 0.1, 0.1, 0.4);
    const double engine = algorithm_classical(j, ClassicalConfig{2.0, 1e-8}).final_x;
    const double oracle = grid_min_classical(j, 2.0, 0.01).min_value;
    CHECK(engine <= oracle + 1e-12);
    CHECK(oracle - engine < 1e-3);
    // Symmetric optimum sits on the grid, so the match is exact.
    CHECK(std::abs(grid_min_classical(j, 2.0, 0.1).min_value - engine) < 1e-8);
}

TEST_CASE("classical strategies agree and refinement is monotone") {
    Rng rng(197);
    for (int i = 0; i < 5; ++i) {
        const JointPmf j = random_joint_pmf(2 + i % 2, 2 + (i / 2) % 2, rng);
        for (double a : {0.75, 1.5}) {
            const OracleResult ex = grid_min_classical(j, a, 0.1, OracleStrategy::exhaustive);
            const OracleResult pr = grid_min_classical(j, a, 0.1, OracleStrategy::profiled);
            CHECK(ex.strategy == OracleStrategy::exhaustive);
            CHECK(pr.strategy == OracleStrategy::profiled);
            // The profile is exact in the second factor, so it can only be lower.
            CHECK(pr.min_value <= ex.min_value + 1e-12);
            double prev = INFINITY;
            for (double h : {0.1, 0.05, 0.025}) {
                const double v = grid_min_classical(j, a, h, OracleStrategy::profiled).min_value;
                CHECK(v <= prev + 1e-12);
                prev = v;
            }
        }
    }
}

TEST_CASE("classical grid errors") {
    Rng rng(199);
    CHECK_THROWS_AS(grid_min_classical(random_joint_pmf(4, 2, rng), 1.5, 0.1), TooLarge);
    const JointPmf j = random_joint_pmf(2, 2, rng);
    CHECK_THROWS_AS(grid_min_classical(j, 1.5, 0.2), InvalidConfig);
    CHECK_THROWS_AS(grid_min_classical(j, 1.5, 0.0), InvalidConfig);
    CHECK_THROWS_AS(grid_min_classical(j, 1.0, 0.1), UnsupportedOrder);
}

TEST_CASE("bloch states") {
    CHECK(max_diff(bloch_state(0.0, 0.3, 1.1), HermitianOperator::identity(2) * 0.5) < 1e-15);
    CHECK(max_diff(bloch_state(1.0, 0.0, 0.0), HermitianOperator::diagonal({1.0, 0.0})) < 1e-15);
    const HermitianOperator x = bloch_state(1.0, M_PI / 2, 0.0);
    CHECK(x(0, 1).real() == doctest::Approx(0.5));
    const HermitianOperator y = bloch_state(0.6, M_PI / 2, M_PI / 2);
    CHECK(y(1, 0).imag() == doctest::Approx(0.3));
    CHECK(y.trace() == doctest::Approx(1.0));
}

TEST_CASE("qubit grid minimum") {
    Rng rng(211);
    // Product of two grid points: the minimum is attained exactly.
    const BipartiteState prod(2, 2, kron(bloch_state(0.5, M_PI / 2, M_PI / 4), bloch_state(0.75, M_PI / 4, 0.0)));
    for (double a : {0.75, 1.5}) {
        CHECK(std::abs(grid_min_quantum_qubit(prod, a, 0.25, OracleStrategy::exhaustive).min_value) < 1e-10);
        CHECK(std::abs(grid_min_quantum_qubit(prod, a, 0.25, OracleStrategy::profiled).min_value) < 1e-10);
    }
    CHECK(std::abs(grid_min_quantum_qubit(maximally_mixed_state(2, 2), 1.5, 0.25).min_value) < 1e-12);
    CHECK(std::abs(grid_min_quantum_qubit(maximally_mixed_state(2, 2), 0.75, 0.25).min_value) < 1e-12);

    for (int i = 0; i < 3; ++i) {
        const BipartiteState rho = random_bipartite_state(2, 2, rng);
        const double engine = engine_value(rho, 1.5);
        const OracleResult o = grid_min_quantum_qubit(rho, 1.5, 0.1, OracleStrategy::profiled);
        CHECK(engine <= o.min_value + 1e-10);
        CHECK(o.min_value - engine < 0.02);
        // Argmin parameters reproduce the value.
        const auto& t = o.argmin_params;
        REQUIRE(t.size() >= 3);
        const HermitianOperator s = bloch_state(t[0], t[1], t[2]);
        CHECK(inf_over_tau(rho, s, 1.5).value() == doctest::Approx(o.min_value).epsilon(1e-10));
    }
    CHECK_THROWS_AS(grid_min_quantum_qubit(maximally_mixed_state(2, 3), 1.5, 0.25), TooLarge);
    CHECK_THROWS_AS(grid_min_quantum_qubit(prod, 1.5, 0.6), InvalidConfig);
}

TEST_CASE("qubit strategies agree and refinement is monotone") {
    Rng rng(223);
    for (int i = 0; i < 5; ++i) {
        const BipartiteState rho = random_bipartite_state(2, 2, rng);
        for (double a : {0.75, 1.5}) {
            const double ex = grid_min_quantum_qubit(rho, a, 0.5, OracleStrategy::exhaustive).min_value;
            const double pr = grid_min_quantum_qubit(rho, a, 0.5, OracleStrategy::profiled).min_value;
            CHECK(pr <= ex + 1e-12);
            double prev = INFINITY;
            for (double h : {0.5, 0.25, 0.125}) {
                const double v = grid_min_quantum_qubit(rho, a, h, OracleStrategy::profiled).min_value;
                CHECK(v <= prev + 1e-12);
                prev = v;
            }
        }
    }
}

TEST_CASE("order-one reference") {
    Rng rng(227);
    CHECK(std::abs(kl_reference(random_product_state(2, 2, rng))) < 1e-12);
    CHECK(kl_reference(maximally_correlated_state(2)) == doctest::Approx(std::log(2.0)));
    CHECK(std::abs(kl_reference(maximally_mixed_state(2, 2))) < 1e-12);
    for (int i = 0; i < 5; ++i) {
        const BipartiteState rho = random_bipartite_state(2, 2, rng);
        const double i1 = kl_reference(rho);
        CHECK(i1 == doctest::Approx(entropy(rho.marginal_a()) + entropy(rho.marginal_b()) - entropy(rho.op())));
        // Monotone in the order, and close to the order-one value nearby.
        const double below = engine_value(rho, 0.98);
        const double above = engine_value(rho, 1.02);
        CHECK(below <= i1 + 1e-9);
        CHECK(above >= i1 - 1e-9);
        CHECK(std::abs(below - i1) < 0.05);
        CHECK(std::abs(above - i1) < 0.05);
    }
}

#include "prmi/random_states.hpp"

namespace prmi {

namespace {

CMatrix ginibre(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) g(i, j) = Complex(normal(rng), normal(rng));
    return g;
}

}  // namespace

Eigen::VectorXcd random_unit_vector(Index dim, Rng& rng) {
    CMatrix g = ginibre(dim, 1, rng);
    Eigen::VectorXcd v = g.col(0);
    return v / v.norm();
}

HermitianOperator random_density(Index dim, Rng& rng, Index rank) {
    if (dim < 1) throw InvalidOperator("dim must be >= 1");
    if (rank <= 0 || rank > dim) rank = dim;
    const CMatrix g = ginibre(dim, rank, rng);
    return HermitianOperator::hermitian_part(g * g.adjoint()).normalized();
}

BipartiteState random_bipartite_state(Index d_a, Index d_b, Rng& rng, Index rank) {
    return BipartiteState(d_a, d_b, random_density(d_a * d_b, rng, rank));
}

BipartiteState random_product_state(Index d_a, Index d_b, Rng& rng) {
    const HermitianOperator a = random_density(d_a, rng);
    const HermitianOperator b = random_density(d_b, rng);
    return BipartiteState(d_a, d_b, kron(a, b).normalized());
}

BipartiteState maximally_correlated_state(Index d) {
    CMatrix m = CMatrix::Zero(d * d, d * d);
    for (Index x = 0; x < d; ++x) m(x * d + x, x * d + x) = 1.0 / static_cast<double>(d);
    return BipartiteState(d, d, HermitianOperator(m));
}

BipartiteState maximally_mixed_state(Index d_a, Index d_b) {
    return BipartiteState(d_a, d_b,
                          HermitianOperator::identity(d_a * d_b) * (1.0 / static_cast<double>(d_a * d_b)));
}

}  // namespace prmi

#pragma once

#include <random>

#include "prmi/operator_core.hpp"

namespace prmi {

using Rng = std::mt19937_64;

/// Haar-random unit vector in C^dim.
Eigen::VectorXcd random_unit_vector(Index dim, Rng& rng);

/// Density operator G G^dagger / tr[G G^dagger] with G a dim x rank complex
/// Ginibre matrix. rank == dim gives a full-rank state almost surely.
HermitianOperator random_density(Index dim, Rng& rng, Index rank = 0);

BipartiteState random_bipartite_state(Index d_a, Index d_b, Rng& rng, Index rank = 0);

/// rho_A (x) rho_B with independent random full-rank marginals.
BipartiteState random_product_state(Index d_a, Index d_b, Rng& rng);

/// (1/d) sum_x |x x><x x|.
BipartiteState maximally_correlated_state(Index d);

/// 1/(d_a d_b).
BipartiteState maximally_mixed_state(Index d_a, Index d_b);

}  // namespace prmi

#pragma once

#include <cstddef>
#include <vector>

#include "prmi/classical_rmi.hpp"
#include "prmi/operator_core.hpp"

namespace prmi {

// Brute-force reference minimizers of D_alpha(rho || sigma (x) tau) for small
// systems. They never touch the alternating iteration.
//
// Two strategies:
//   exhaustive - minimum over the product grid of (first factor, second factor);
//   profiled   - minimum over the grid of the first factor only, with the second
//                factor minimized exactly in closed form,
//                  min_tau D = alpha/(alpha-1) log tr (tr_A[rho^alpha sigma^(1-alpha)])^(1/alpha).
// `automatic` picks exhaustive whenever the product grid has at most
// kExhaustiveLimit points. Grids at step h/2 contain the grid at step h, so
// refining never raises the minimum.

enum class OracleStrategy { automatic, exhaustive, profiled };

inline constexpr std::size_t kExhaustiveLimit = 20'000'000;

struct OracleResult {
    double min_value = 0.0;
    /// Classical: Q_X followed by R_Y. Quantum: (r, theta, phi) of sigma_A then tau_B.
    std::vector<double> argmin_params;
    double grid_step = 0.0;
    std::size_t evaluations = 0;
    OracleStrategy strategy = OracleStrategy::exhaustive;
};

/// Grid minimum over barycentric simplex grids with N = ceil(1/step) divisions.
/// Requires |X|, |Y| <= 3 (TooLarge) and step in (0, 0.1] (InvalidConfig).
OracleResult grid_min_classical(const JointPmf& p, double alpha, double step,
                                OracleStrategy strategy = OracleStrategy::automatic);

/// Grid minimum over Bloch-ball parameterizations (r, theta, phi) of qubit
/// sigma_A and tau_B: r in {0, h, ..., 1-h} (plus r = 1 for alpha < 1),
/// theta = k pi / N, phi = 2 pi j / (2N), N = round(1/h). Requires a 2 (x) 2
/// state (TooLarge otherwise) and step in (0, 0.5].
OracleResult grid_min_quantum_qubit(const BipartiteState& rho, double alpha, double step,
                                    OracleStrategy strategy = OracleStrategy::automatic);

/// Qubit density operator (I + r (sin t cos p X + sin t sin p Y + cos t Z)) / 2.
HermitianOperator bloch_state(double r, double theta, double phi);

/// Quantum mutual information S(A) + S(B) - S(AB), the alpha -> 1 reference.
double kl_reference(const BipartiteState& rho);

}  // namespace prmi

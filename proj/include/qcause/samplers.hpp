#pragma once

#include <cstddef>
#include <vector>

#include "qcause/polytopes.hpp"
#include "qcause/quantum.hpp"
#include "qcause/rng.hpp"

namespace qcause {

/// Haar-random pure two-qubit state with four rank-1 projective qubit POVMs
/// (Alice x = 0, 1 then Bob a = 0, 1).
QuantumInstrumentModel random_qubit_model(Rng& rng);

/// Separable two-qubit state with 1..4 product terms; each effect pair is
/// projective or unsharp (Bloch length uniform in [0.5, 1]) with equal odds.
QuantumInstrumentModel random_separable_model(Rng& rng);

/// Parent POVM G_l = T^{-1/2} S_l T^{-1/2} with S_l = w_l (I + r_l n_l.sigma)/2
/// and T = sum S_l; weights exponential, r_l uniform in [0, 1].
std::vector<ComplexMatrix> random_parent_povm(std::size_t outcomes, Rng& rng);
/// d(b|a,l) uniform in [0, 1] for b = 0.
PostProcessing random_post_processing(std::size_t outcomes, Rng& rng);

/// Pure two-qubit state, projective Alice, Bob's pair post-processed from a
/// random 2..4 outcome parent POVM.
QuantumInstrumentModel random_compatible_bob_model(Rng& rng);

/// Normalized exponential weights on a random support of 1..max_support
/// distinct indices out of n (zero elsewhere).
std::vector<double> random_sparse_weights(std::size_t n, std::size_t max_support, Rng& rng);

/// Convex combination of the 24 NS vertices with sparse random weights.
BellBehavior random_ns_mixture(Rng& rng);

/// Convex combination of the 16 local (behavior, do) pairs with sparse weights.
BehaviorDoPair random_classical_mixture(Rng& rng);

/// Outcome relabeling b <-> 1 - b.
BellBehavior relabel_b(const BellBehavior& bell);

}  // namespace qcause

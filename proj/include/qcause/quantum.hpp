#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qcause/matrix.hpp"
#include "qcause/rng.hpp"
#include "qcause/scenario.hpp"

namespace qcause {

/// Two-outcome POVM stored effect-wise: {E_0, E_1}.
using Povm = std::array<ComplexMatrix, 2>;

/// Shared state plus Alice's POVMs alice[x][a] = M^x_a and Bob's POVMs
/// bob[a][b] = N^a_b, where Bob's setting is Alice's outcome.
struct QuantumInstrumentModel {
  std::size_t dim_a = 2;
  std::size_t dim_b = 2;
  ComplexMatrix rho;
  std::array<Povm, 2> alice;
  std::array<Povm, 2> bob;
};

struct BlochVector {
  std::array<double, 3> n{0.0, 0.0, 0.0};

  double norm() const;
  double dot(const BlochVector& other) const;
  BlochVector operator+(const BlochVector& o) const;
  BlochVector operator-(const BlochVector& o) const;
  BlochVector operator*(double s) const;
};

/// n . sigma
ComplexMatrix bloch_operator(const BlochVector& v);
/// Effect pair {(I + n.sigma)/2, (I - n.sigma)/2}. Throws if |n| > 1.
Povm bloch_povm(const BlochVector& v);
/// Unit vector (sin t, 0, cos t) in the x-z plane.
BlochVector xz_direction(double angle);

/// Dichotomic observable E_0 - E_1.
ComplexMatrix observable(const Povm& povm);
/// Effects of a +-1 valued observable: {(I + O)/2, (I - O)/2}.
Povm povm_from_observable(const ComplexMatrix& obs);

/// Throws Error(Errc::invalid_model) with the first problem found.
void validate(const QuantumInstrumentModel& model);
void validate_povm(const Povm& povm, std::size_t dim);

/// p(a,b|x) = Tr[(M^x_a (x) N^a_b) rho].
InstrumentalBehavior behavior(const QuantumInstrumentModel& model);
/// q[b][a] = Tr[N^a_b rho_B].
DoTable do_table(const QuantumInstrumentModel& model);
/// max_{a,a',b} Tr[(N^a_b - N^a'_b) rho_B].
double qace(const QuantumInstrumentModel& model);

/// Bell statistics p(a,b|x,y) = Tr[(M^x_a (x) N^y_b) rho] of the same devices.
BellBehavior bell_behavior(const QuantumInstrumentModel& model);

/// Haar-random unit vector in C^d built from 2d normal variates
/// (re, im interleaved per component).
std::vector<cplx> random_pure_state(std::size_t dim, Rng& rng);
/// Uniform direction on the unit sphere from three normal variates.
BlochVector random_bloch_direction(Rng& rng);

/// sum_l p(l) rho_A^l (x) rho_B^l with k random pure product terms; the
/// weights are normalized exponential variates drawn before each term's
/// A and B vectors.
ComplexMatrix separable_sample(std::size_t dim_a, std::size_t dim_b,
                               std::size_t k_terms, std::uint64_t seed);
ComplexMatrix separable_sample(std::size_t dim_a, std::size_t dim_b,
                               std::size_t k_terms, Rng& rng);

/// Rank-1 qubit projectors {P, I - P} along a uniformly random direction.
Povm random_projective_qubit(std::uint64_t seed);
Povm random_projective_qubit(Rng& rng);

/// post[l][a][b] = d(b|a,l).
using PostProcessing = std::vector<std::array<std::array<double, 2>, 2>>;

/// Bob's POVMs N^a_b = sum_l d(b|a,l) G_l obtained from a parent POVM.
std::array<Povm, 2> compatible_bob_from_parent(const std::vector<ComplexMatrix>& parent,
                                               const PostProcessing& post);

/// |Phi+><Phi+| on C^d (x) C^d.
ComplexMatrix maximally_entangled(std::size_t dim);
/// (1 - p) |Phi+><Phi+| + p I/4 on two qubits.
ComplexMatrix isotropic_state(double noise);

}  // namespace qcause

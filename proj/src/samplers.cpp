#include "qcause/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcause/error.hpp"

namespace qcause {

namespace {

Povm random_effect_pair(Rng& rng, bool allow_unsharp) {
  auto n = random_bloch_direction(rng);
  if (allow_unsharp && rng.uniform() < 0.5) n = n * rng.uniform(0.5, 1.0);
  return bloch_povm(n);
}

ComplexMatrix inverse_sqrt(const ComplexMatrix& t) {
  const auto e = eig2_hermitian(t);
  ComplexMatrix out(2, 2);
  for (int i = 0; i < 2; ++i) {
    if (e.values[i] <= 0.0) throw Error(Errc::invalid_model, "parent POVM: singular total");
    out += ComplexMatrix::projector(e.vectors[i]) * (1.0 / std::sqrt(e.values[i]));
  }
  return out;
}

}  // namespace

QuantumInstrumentModel random_qubit_model(Rng& rng) {
  QuantumInstrumentModel m;
  m.rho = ComplexMatrix::projector(random_pure_state(4, rng));
  for (auto& povm : m.alice) povm = random_projective_qubit(rng);
  for (auto& povm : m.bob) povm = random_projective_qubit(rng);
  return m;
}

QuantumInstrumentModel random_separable_model(Rng& rng) {
  QuantumInstrumentModel m;
  const auto k = 1 + static_cast<std::size_t>(rng.uniform() * 4.0);
  m.rho = separable_sample(2, 2, std::min<std::size_t>(k, 4), rng);
  for (auto& povm : m.alice) povm = random_effect_pair(rng, true);
  for (auto& povm : m.bob) povm = random_effect_pair(rng, true);
  return m;
}

std::vector<ComplexMatrix> random_parent_povm(std::size_t outcomes, Rng& rng) {
  if (outcomes == 0) throw Error(Errc::invalid_model, "parent POVM needs at least one outcome");
  std::vector<ComplexMatrix> s;
  auto total = ComplexMatrix::zeros(2, 2);
  for (std::size_t l = 0; l < outcomes; ++l) {
    const double w = rng.exponential();
    const auto n = random_bloch_direction(rng) * rng.uniform();
    auto effect = (ComplexMatrix::identity(2) + bloch_operator(n)) * (0.5 * w);
    total += effect;
    s.push_back(std::move(effect));
  }
  const auto root = inverse_sqrt(total);
  for (auto& effect : s) effect = root * effect * root;
  return s;
}

PostProcessing random_post_processing(std::size_t outcomes, Rng& rng) {
  PostProcessing post(outcomes);
  for (auto& per_l : post)
    for (auto& per_a : per_l) {
      per_a[0] = rng.uniform();
      per_a[1] = 1.0 - per_a[0];
    }
  return post;
}

QuantumInstrumentModel random_compatible_bob_model(Rng& rng) {
  QuantumInstrumentModel m;
  m.rho = ComplexMatrix::projector(random_pure_state(4, rng));
  for (auto& povm : m.alice) povm = random_projective_qubit(rng);
  const auto outcomes = 2 + static_cast<std::size_t>(rng.uniform() * 3.0);
  const auto parent = random_parent_povm(std::min<std::size_t>(outcomes, 4), rng);
  m.bob = compatible_bob_from_parent(parent, random_post_processing(parent.size(), rng));
  return m;
}

std::vector<double> random_sparse_weights(std::size_t n, std::size_t max_support, Rng& rng) {
  if (n == 0 || max_support == 0) throw Error(Errc::domain, "random_sparse_weights: empty support");
  max_support = std::min(max_support, n);
  const auto k = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(max_support));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates: the first k entries become the chosen indices.
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform() * static_cast<double>(n - i));
    std::swap(idx[i], idx[std::min(j, n - 1)]);
  }
  std::vector<double> w(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double v = rng.exponential() + 1e-12;
    w[idx[i]] = v;
    total += v;
  }
  for (auto& v : w) v /= total;
  return w;
}

BellBehavior random_ns_mixture(Rng& rng) {
  static const auto vertices = ns_vertices();
  const auto w = random_sparse_weights(vertices.size(), 4, rng);
  BellBehavior out;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (w[v] == 0.0) continue;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y) out(a, b, x, y) += w[v] * vertices[v].bell(a, b, x, y);
  }
  return out;
}

BehaviorDoPair random_classical_mixture(Rng& rng) {
  static const auto vertices = local_strategies();
  const auto w = random_sparse_weights(vertices.size(), 4, rng);
  BehaviorDoPair out;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (w[v] == 0.0) continue;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        for (int x = 0; x < 2; ++x) out.behavior(a, b, x) += w[v] * vertices[v].behavior(a, b, x);
        out.table(b, a) += w[v] * vertices[v].table(b, a);
      }
  }
  return out;
}

BellBehavior relabel_b(const BellBehavior& bell) {
  BellBehavior out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) out(a, b, x, y) = bell(a, 1 - b, x, y);
  return out;
}

}  // namespace qcause

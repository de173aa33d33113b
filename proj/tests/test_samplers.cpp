#include <doctest.h>

#include <cmath>
#include <numeric>

#include "qcause/bounds.hpp"
#include "qcause/samplers.hpp"

using namespace qcause;

TEST_CASE("sparse weights") {
  Rng rng(51);
  for (int k = 0; k < 200; ++k) {
    const auto w = random_sparse_weights(24, 4, rng);
    REQUIRE(w.size() == 24);
    int support = 0;
    for (double v : w) {
      CHECK(v >= 0.0);
      support += v > 0.0;
    }
    CHECK(support >= 1);
    CHECK(support <= 4);
    CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0));
  }
}

TEST_CASE("random models are valid") {
  Rng rng(52);
  for (int k = 0; k < 30; ++k) {
    validate(random_qubit_model(rng));
    validate(random_separable_model(rng));
    validate(random_compatible_bob_model(rng));
  }
}

TEST_CASE("parent POVMs") {
  Rng rng(53);
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto g = random_parent_povm(n, rng);
    REQUIRE(g.size() == n);
    ComplexMatrix sum = ComplexMatrix::zeros(2, 2);
    for (const auto& e : g) {
      sum += e;
      CHECK(check_density(e).is_psd);
    }
    CHECK(sum.max_abs_diff(ComplexMatrix::identity(2)) < 1e-12);
  }
}

TEST_CASE("mixtures stay in their polytopes") {
  Rng rng(54);
  for (int k = 0; k < 100; ++k) {
    const auto bell = random_ns_mixture(rng);
    CHECK(signaling_residual(bell) < 1e-12);
    validate(bell);
    const auto mix = random_classical_mixture(rng);
    validate(mix.behavior);
    validate(mix.table);
    CHECK(consistent_pair(mix.behavior, mix.table, 1e-12));
    CHECK(instrumental_inequality_slack(mix.behavior) <= 1e-12);
  }
}

TEST_CASE("relabeling b flips the signed effect and is an involution") {
  Rng rng(55);
  for (int k = 0; k < 20; ++k) {
    const auto bell = random_ns_mixture(rng);
    CHECK(relabel_b(relabel_b(bell)) == bell);
    CHECK(ace_signed(do_from_bell(relabel_b(bell))) == doctest::Approx(-ace_signed(do_from_bell(bell))));
  }
}

TEST_CASE("samplers are reproducible from the seed") {
  Rng a(56), b(56);
  const auto ma = random_qubit_model(a);
  const auto mb = random_qubit_model(b);
  CHECK(ma.rho == mb.rho);
  CHECK(behavior(ma) == behavior(mb));
}

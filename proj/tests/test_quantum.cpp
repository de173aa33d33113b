#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcause/constructions.hpp"
#include "qcause/error.hpp"
#include "qcause/quantum.hpp"
#include "qcause/samplers.hpp"

using namespace qcause;

namespace {

constexpr double kPi = std::numbers::pi;

Povm z_basis() { return povm_from_observable(pauli::z()); }
Povm x_basis() { return povm_from_observable(pauli::x()); }

ComplexMatrix ket00() {
  const ComplexMatrix p0{{1, 0}, {0, 0}};
  return tensor(p0, p0);
}

QuantumInstrumentModel make(const ComplexMatrix& rho, Povm m0, Povm m1, Povm n0, Povm n1) {
  QuantumInstrumentModel m;
  m.rho = rho;
  m.alice = {m0, m1};
  m.bob = {n0, n1};
  return m;
}

double effect_distance(const Povm& a, const Povm& b) {
  return std::max(a[0].max_abs_diff(b[0]), a[1].max_abs_diff(b[1]));
}

}  // namespace

TEST_CASE("behavior of simple models") {
  SUBCASE("product eigenstate") {
    const auto m = make(ket00(), z_basis(), z_basis(), z_basis(), z_basis());
    const auto beh = behavior(m);
    CHECK(beh(0, 0, 0) == doctest::Approx(1.0));
    CHECK(beh(0, 0, 1) == doctest::Approx(1.0));
  }
  SUBCASE("maximally entangled, all sigma_Z") {
    const auto m = make(maximally_entangled(2), z_basis(), z_basis(), z_basis(), z_basis());
    const auto beh = behavior(m);
    for (int x = 0; x < 2; ++x) {
      CHECK(beh(0, 0, x) == doctest::Approx(0.5));
      CHECK(beh(1, 1, x) == doctest::Approx(0.5));
    }
    CHECK(qace(m) == doctest::Approx(0.0));
  }
  SUBCASE("correlator identity on the maximally entangled x-z family") {
    // <M(t) (x) N(f)> = cos t cos f + sin t sin f at alpha = pi/4.
    const XzAngles angles{kPi / 4, {0.0, -kPi / 2}, {0.0, kPi / 2}};
    const auto beh = behavior(xz_model(angles));
    for (int x = 0; x < 2; ++x) {
      const int a_for_bob[2] = {0, 1};
      for (int a : a_for_bob) {
        const double t = angles.theta[x], f = angles.phi[a];
        const double corr = std::cos(t) * std::cos(f) + std::sin(t) * std::sin(f);
        // Marginals vanish at alpha = pi/4, so p(a,b|x) = (1 + (-1)^(a+b) corr)/4.
        for (int b = 0; b < 2; ++b) {
          const double sign = (a + b) % 2 == 0 ? 1.0 : -1.0;
          CHECK(beh(a, b, x) == doctest::Approx((1 + sign * corr) / 4).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("closed-form x-z statistics match the matrix model") {
  Rng rng(21);
  for (int k = 0; k < 50; ++k) {
    XzAngles a{rng.uniform(0, kPi / 2),
               {rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)},
               {rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)}};
    const auto closed = xz_behavior(a);
    const auto matrix = behavior(xz_model(a));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int x = 0; x < 2; ++x) CHECK(std::abs(closed(i, j, x) - matrix(i, j, x)) < 1e-14);
    const auto t1 = xz_do_table(a), t2 = do_table(xz_model(a));
    for (int b = 0; b < 2; ++b)
      for (int aa = 0; aa < 2; ++aa) CHECK(std::abs(t1(b, aa) - t2(b, aa)) < 1e-14);
  }
}

TEST_CASE("do-table and qACE") {
  const auto maxent = make(maximally_entangled(2), z_basis(), x_basis(), z_basis(), x_basis());
  const auto t = do_table(maxent);
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a) CHECK(t(b, a) == doctest::Approx(0.5));
  CHECK(qace(maxent) == doctest::Approx(0.0).epsilon(1e-15));

  const auto prod = make(ket00(), z_basis(), z_basis(), z_basis(), x_basis());
  const auto tp = do_table(prod);
  CHECK(tp(0, 0) == doctest::Approx(1.0));
  CHECK(tp(0, 1) == doctest::Approx(0.5));
  CHECK(qace(prod) == doctest::Approx(0.5));

  Rng rng(22);
  for (int k = 0; k < 20; ++k) {
    const auto td = do_table(random_qubit_model(rng));
    for (int a = 0; a < 2; ++a) CHECK(td(0, a) + td(1, a) == doctest::Approx(1.0));
  }
}

TEST_CASE("opposite Bob angles give zero qACE on every x-z state") {
  for (double alpha : {0.1, 0.4, 0.7}) {
    for (double phi : {0.2, 1.0, 2.5}) {
      const XzAngles a{alpha, {0.3, -1.2}, {phi, -phi}};
      CHECK(std::abs(qace(xz_model(a))) < 1e-14);
    }
  }
}

TEST_CASE("separable samples") {
  const auto one = separable_sample(2, 2, 1, 3);
  const auto ra = partial_trace(one, 2, 2, Subsystem::a);
  const auto rb = partial_trace(one, 2, 2, Subsystem::b);
  CHECK(one.max_abs_diff(tensor(ra, rb)) < 1e-14);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = separable_sample(2, 3, 1 + seed % 4, seed);
    const auto chk = check_density(rho);
    CHECK(chk.is_hermitian);
    CHECK(chk.is_psd);
    CHECK(chk.trace == doctest::Approx(1.0));
  }
  CHECK(separable_sample(2, 2, 4, 7) == separable_sample(2, 2, 4, 7));
}

TEST_CASE("random projective qubits") {
  const auto p = random_projective_qubit(99);
  CHECK((p[0] + p[1]).max_abs_diff(ComplexMatrix::identity(2)) < 1e-15);
  CHECK((p[0] * p[0]).max_abs_diff(p[0]) < 1e-12);
  CHECK((p[1] * p[1]).max_abs_diff(p[1]) < 1e-12);

  // Mean Bloch vector of 1e5 uniform directions: each component has standard
  // deviation 1/sqrt(3e5), so the norm is below 0.02 far beyond 3 sigma.
  Rng rng(2024);
  double sum[3] = {0, 0, 0};
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    const auto povm = random_projective_qubit(rng);
    const auto obs = observable(povm);
    sum[0] += obs(0, 1).real();
    sum[1] += -obs(0, 1).imag();
    sum[2] += obs(0, 0).real();
  }
  const double norm = std::sqrt(sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]) / n;
  CHECK(norm < 0.02);
}

TEST_CASE("compatible Bob measurements from a parent POVM") {
  SUBCASE("trivial parent") {
    const PostProcessing half{{{{0.5, 0.5}, {0.5, 0.5}}}};
    const auto bob = compatible_bob_from_parent({ComplexMatrix::identity(2)}, half);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) CHECK(bob[a][b].max_abs_diff(ComplexMatrix::identity(2) * 0.5) < 1e-15);
  }
  SUBCASE("relabeled sigma_Z parent") {
    const auto z = z_basis();
    const PostProcessing copy{{{{1.0, 0.0}, {1.0, 0.0}}}, {{{0.0, 1.0}, {0.0, 1.0}}}};
    const auto bob = compatible_bob_from_parent({z[0], z[1]}, copy);
    CHECK(effect_distance(bob[0], z) < 1e-15);
    CHECK(effect_distance(bob[1], z) < 1e-15);
  }
  SUBCASE("noisy orthogonal pair of length 1/2 from four outcomes") {
    // G_ij = (I + eta((-1)^i n0 + (-1)^j n1).sigma) / 4 with eta = 1/2.
    const BlochVector n0{{0, 0, 1}}, n1{{1, 0, 0}};
    std::vector<ComplexMatrix> parent;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double si = i == 0 ? 1 : -1, sj = j == 0 ? 1 : -1;
        parent.push_back((ComplexMatrix::identity(2) + bloch_operator(n0 * si + n1 * sj) * 0.5) * 0.25);
      }
    PostProcessing post(4);
    for (int l = 0; l < 4; ++l) {
      const int i = l / 2, j = l % 2;
      post[l][0] = {i == 0 ? 1.0 : 0.0, i == 0 ? 0.0 : 1.0};
      post[l][1] = {j == 0 ? 1.0 : 0.0, j == 0 ? 0.0 : 1.0};
    }
    const auto bob = compatible_bob_from_parent(parent, post);
    CHECK(effect_distance(bob[0], bloch_povm(n0 * 0.5)) < 1e-15);
    CHECK(effect_distance(bob[1], bloch_povm(n1 * 0.5)) < 1e-15);
    validate_povm(bob[0], 2);
    validate_povm(bob[1], 2);
  }
}

TEST_CASE("model validation") {
  auto m = make(maximally_entangled(2), z_basis(), x_basis(), z_basis(), x_basis());
  validate(m);
  auto bad_state = m;
  bad_state.rho = bad_state.rho * 2.0;
  CHECK_THROWS_AS(validate(bad_state), Error);
  auto bad_povm = m;
  bad_povm.bob[1][0] = ComplexMatrix::identity(2);
  CHECK_THROWS_AS(validate(bad_povm), Error);
  CHECK_THROWS_AS(bloch_povm(BlochVector{{1.0, 1.0, 0.0}}), Error);
  auto bad_dims = m;
  bad_dims.dim_b = 3;
  CHECK_THROWS_AS(validate(bad_dims), Error);
}

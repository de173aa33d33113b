#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcause/bounds.hpp"
#include "qcause/constructions.hpp"
#include "qcause/error.hpp"
#include "qcause/kernels.hpp"
#include "qcause/polytopes.hpp"
#include "qcause/samplers.hpp"

using namespace qcause;

namespace {

double max_of(const std::array<double, 6>& v) { return *std::max_element(v.begin(), v.end()); }

InstrumentalBehavior slice(double s, double t) {
  InstrumentalBehavior b;
  const double p00[2] = {s, t};
  for (int x = 0; x < 2; ++x) {
    b(0, 0, x) = p00[x];
    b(0, 1, x) = 0.5 - p00[x];
    b(1, 1, x) = 0.5;
  }
  return b;
}

// The quantum bound with the leading sum replaced by 2(p(0,0|1) + p(1,1|1)),
// kept with the smaller root.
double prefactor_variant(const InstrumentalBehavior& p) {
  const auto s = outcome_contrasts(p);
  const double plus = std::sqrt(std::max(0.0, (1 + s[0]) * (1 + s[1])));
  const double minus = std::sqrt(std::max(0.0, (1 - s[0]) * (1 - s[1])));
  return 2 * (p(0, 0, 1) + p(1, 1, 1)) - 1 - std::min(plus, minus);
}

}  // namespace

TEST_CASE("six classical bounds") {
  const auto chain = cace_lower_bounds(InstrumentalBehavior::deterministic_chain());
  CHECK(chain[0] == 1.0);
  CHECK(max_of(chain) == 1.0);

  // Every p(a,b|x) = 1/4: two-term bounds give 1/2 - 1, four-term ones 5/4 - 2.
  const auto u = cace_lower_bounds(InstrumentalBehavior::uniform());
  const std::array<double, 6> expected{-0.5, -0.5, -0.75, -0.75, -0.75, -0.75};
  for (int k = 0; k < 6; ++k) CHECK(u[k] == doctest::Approx(expected[k]));

  const auto opt = optimal_two_qubit();
  CHECK(max_of(cace_lower_bounds(opt.behavior)) >= 3 - 2 * std::sqrt(2.0) - 1e-9);
  CHECK(std::abs(qace(opt.model)) < 1e-12);
}

TEST_CASE("each classical bound is valid on every deterministic strategy") {
  // Oracle: the signed effect q[0][0] - q[0][1] of the strategy itself.
  for (const auto& s : deterministic_strategies()) {
    const double delta = ace_signed(s.do_table());
    for (double v : cace_lower_bounds(s.behavior())) CHECK(v <= delta + 1e-15);
  }
}

TEST_CASE("closed-form quantum bound") {
  // Uniform behavior, by hand: sum_x (p(0,0|x) + p(1,1|x)) = 1, S_0 = S_1 = 0,
  // both roots 1, so the bound is 1 - 1 - 1 = -1.
  CHECK(qace_lower_bound(InstrumentalBehavior::uniform()) == doctest::Approx(-1.0));
  // Realized by |00> with every party measuring sigma_X, whose qACE is 0.
  CHECK(qace_lower_bound(InstrumentalBehavior::uniform()) <= 0.0);

  // Deterministic chain: leading sum 2, S = (1, 1), smaller root 0.
  CHECK(qace_lower_bound(InstrumentalBehavior::deterministic_chain()) == doctest::Approx(1.0));

  const auto opt = optimal_two_qubit();
  CHECK(qace_lower_bound(opt.behavior) <= opt.qace + 1e-12);
}

TEST_CASE("sign and prefactor choices of the quantum bound are settled by the qACE oracle") {
  // Adding the larger root exceeds the largest possible ACE of 1.
  CHECK(qace_expression_plus_max_root(InstrumentalBehavior::deterministic_chain()) ==
        doctest::Approx(3.0));

  Rng rng(31);
  int sound_fail = 0, variant_fail = 0;
  double variant_worst = -1.0;
  for (int k = 0; k < 1000; ++k) {
    const auto m = random_qubit_model(rng);
    const auto beh = behavior(m);
    const double q = qace(m);
    sound_fail += qace_lower_bound(beh) > q + 1e-8;
    const double excess = prefactor_variant(beh) - q;
    variant_fail += excess > 1e-8;
    variant_worst = std::max(variant_worst, excess);
  }
  CHECK(sound_fail == 0);
  // The 2(p(0,0|1) + p(1,1|1)) leading term only works inside the parametric
  // family, where the S-terms compensate it.
  CHECK(variant_fail > 0);
  CHECK(variant_worst > 0.1);
}

TEST_CASE("parametric family reproduces the closed form") {
  Rng rng(32);
  double grid_worst = 0.0, stationary_worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto beh = behavior(random_qubit_model(rng));
    const double closed = qace_lower_bound(beh);
    double best = -INFINITY;
    for (int i = 0; i <= 60000; ++i) best = std::max(best, qace_lower_bound_parametric(beh, -3.0 + i * 1e-4));
    // Polish the grid maximum with Brent on the neighbouring cells.
    double a_best = -3.0;
    for (int i = 0; i <= 60000; ++i)
      if (qace_lower_bound_parametric(beh, -3.0 + i * 1e-4) == best) {
        a_best = -3.0 + i * 1e-4;
        break;
      }
    const auto polished = brent_max([&](double a) { return qace_lower_bound_parametric(beh, a); },
                                    a_best - 1e-4, a_best + 1e-4, 1e-12);
    best = std::max(best, polished.value);
    grid_worst = std::max(grid_worst, std::abs(best - closed));

    double stationary = -INFINITY;
    for (int branch : {1, -1})
      if (const auto a = stationary_alpha(beh, branch))
        stationary = std::max(stationary, qace_lower_bound_parametric(beh, *a));
    stationary_worst = std::max(stationary_worst, std::abs(stationary - closed));
  }
  CHECK(grid_worst <= 1e-6);
  CHECK(stationary_worst <= 1e-9);

  const auto u = InstrumentalBehavior::uniform();
  const double v = qace_lower_bound_parametric(u, 1.0);
  CHECK(std::isfinite(v));
  CHECK(v <= qace_lower_bound(u));
  CHECK(qace_lower_bound_parametric(u, 0.0) == -INFINITY);
  CHECK(qace_lower_bound_parametric(u, -0.5) == -INFINITY);
}

TEST_CASE("non-signaling bound") {
  CHECK(nace_lower_bound(InstrumentalBehavior::deterministic_chain()) == 1.0);
  CHECK(nace_lower_bound(instrumental_from_bell(pr_box())) == doctest::Approx(0.0));
  for (double s : {0.0, 0.2, 0.5})
    for (double t : {0.1, 0.35, 0.5})
      CHECK(nace_lower_bound(slice(s, t)) == doctest::Approx(std::max(s, t) - 0.5));

  for (const auto& v : mapped_ns_vertices()) {
    CHECK(nace_lower_bound(v.behavior) <= ace(v.table) + 1e-9);
    CHECK(nace_lower_bound_relabeled(v.behavior) <= ace(v.table) + 1e-9);
  }
  Rng rng(33);
  for (int k = 0; k < 300; ++k) {
    const auto bell = random_ns_mixture(rng);
    const auto beh = instrumental_from_bell(bell);
    const auto t = do_from_bell(bell);
    CHECK(nace_lower_bound(beh) <= ace_signed(t) + 1e-9);
    CHECK(nace_lower_bound_relabeled(beh) <= -ace_signed(t) + 1e-9);
  }
}

TEST_CASE("Bell expression") {
  const BellCoefficients chsh{-1, 1, 1, -1};
  CHECK(bell_expression(pr_box(), chsh) == doctest::Approx(4.0));

  BellBehavior uniform;
  for (auto& pa : uniform.p)
    for (auto& pb : pa)
      for (auto& px : pb) px = {0.25, 0.25};
  CHECK(bell_expression(uniform, {0.3, -1.2, 2.0, 0.7}) == 0.0);

  const BellCoefficients c{0.3, -1.2, 2.0, 0.7};
  BellBehavior zero;  // a = b = 0 for every input: all correlators +1
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) zero(0, 0, x, y) = 1.0;
  CHECK(bell_expression(zero, c) == doctest::Approx(-c.alpha + c.beta + c.gamma + c.delta));

  BellBehavior det;  // a = x, b = y: correlator (-1)^(x+y)
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) det(x, y, x, y) = 1.0;
  CHECK(bell_expression(det, c) == doctest::Approx(-c.alpha - c.beta - c.gamma + c.delta));
}

TEST_CASE("Bell expression through instrumental data") {
  Rng rng(34);
  for (int k = 0; k < 50; ++k) {
    const auto bell = bell_behavior(random_qubit_model(rng));
    const BellCoefficients c{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                             rng.uniform(-2, 2)};
    const double direct = bell_expression(bell, c);
    const double via = bell_expression_from_instrumental(instrumental_from_bell(bell),
                                                         do_from_bell(bell), c);
    CHECK(std::abs(direct - via) < 1e-12);
  }
}

TEST_CASE("Cauchy-Schwarz cap") {
  // alpha = 1, beta = 2/3: r = (2 * 1/3) / (2/3) = 1, cap = (5/3) * 2.
  CHECK(cauchy_schwarz_cap(1.0, 2.0 / 3.0) == doctest::Approx(10.0 / 3.0));
  // alpha = beta: xi = 2 + 4 a^2 / (a^2 - 1) stays in [-2, 2] only for a <= 1/sqrt 2.
  for (double a : {0.2, 0.5, 0.7}) {
    const double s = std::sqrt((1 + a) * (1 - a));
    CHECK(cauchy_schwarz_cap(a, a) == doctest::Approx(2 * a * (s / a + a / s)));
  }
  CHECK_THROWS_AS(cauchy_schwarz_cap(0.8, 0.8), Error);
  // The cap is the maximum of the Cauchy-Schwarz right-hand side over xi.
  for (const auto& [a, b] : admissible_cap_pairs(20, 35)) {
    const BellCoefficients c{a, b, 1 + a, 1 - b};
    double best = 0.0;
    for (int i = 0; i <= 40000; ++i) best = std::max(best, cauchy_schwarz_rhs(c, -2.0 + i * 1e-4));
    CHECK(cauchy_schwarz_cap(c) == doctest::Approx(best).epsilon(1e-7));
  }
  CHECK_THROWS_AS(cauchy_schwarz_cap(2.0, 2.0), Error);
  CHECK_THROWS_AS(cauchy_schwarz_cap(BellCoefficients{0.5, 0.5, 1.0, 1.0}), Error);
}

TEST_CASE("bound report") {
  Rng rng(36);
  for (int k = 0; k < 20; ++k) {
    const auto beh = behavior(random_qubit_model(rng));
    const auto r = bound_report(beh);
    CHECK(r.classical_max == max_of(r.classical_six));
    CHECK(r.quantum == qace_lower_bound(beh));
    CHECK(r.nonsignaling_clamped >= 0.0);
  }
  const auto chain = bound_report(InstrumentalBehavior::deterministic_chain());
  CHECK(chain.classical_max == 1.0);
  CHECK(chain.quantum == doctest::Approx(1.0));
  CHECK(chain.nonsignaling == 1.0);
}

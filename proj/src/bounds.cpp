#include "qcause/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qcause/error.hpp"
#include "qcause/tolerances.hpp"

namespace qcause {

std::array<double, 6> cace_lower_bounds(const InstrumentalBehavior& p) {
  return {
      p(0, 0, 0) + p(1, 1, 1) - 1.0,
      p(1, 1, 0) + p(0, 0, 1) - 1.0,
      2.0 * p(0, 0, 0) + p(1, 1, 0) + p(0, 1, 1) + p(1, 1, 1) - 2.0,
      p(0, 0, 0) + 2.0 * p(1, 1, 0) + p(0, 0, 1) + p(1, 0, 1) - 2.0,
      p(0, 1, 0) + p(1, 1, 0) + 2.0 * p(0, 0, 1) + p(1, 1, 1) - 2.0,
      p(0, 0, 0) + p(1, 0, 0) + p(0, 0, 1) + 2.0 * p(1, 1, 1) - 2.0,
  };
}

double cace_primary_bound(const InstrumentalBehavior& beh) { return cace_lower_bounds(beh)[2]; }

std::array<double, 2> outcome_contrasts(const InstrumentalBehavior& p) {
  std::array<double, 2> s{};
  for (int a = 0; a < 2; ++a)
    s[a] = (p(a, 0, 0) - p(a, 1, 0)) - (p(a, 0, 1) - p(a, 1, 1));
  return s;
}

namespace {

double clamp_factor(double f) {
  if (f < -tol::kSqrtClamp) {
    throw Error(Errc::domain,
                "qACE bound: negative factor " + std::to_string(f) +
                    " (behavior is not instrumental-feasible)");
  }
  return std::max(f, 0.0);
}

/// sqrt((1+S0)(1+S1)) and sqrt((1-S0)(1-S1)).
std::array<double, 2> branch_roots(const InstrumentalBehavior& beh) {
  const auto s = outcome_contrasts(beh);
  const double plus = clamp_factor(1.0 + s[0]) * clamp_factor(1.0 + s[1]);
  const double minus = clamp_factor(1.0 - s[0]) * clamp_factor(1.0 - s[1]);
  return {std::sqrt(plus), std::sqrt(minus)};
}

double diagonal_mass(const InstrumentalBehavior& p) {
  return p(0, 0, 0) + p(1, 1, 0) + p(0, 0, 1) + p(1, 1, 1);
}

}  // namespace

double qace_lower_bound(const InstrumentalBehavior& beh) {
  const auto roots = branch_roots(beh);
  return diagonal_mass(beh) - 1.0 - std::min(roots[0], roots[1]);
}

double qace_expression_plus_max_root(const InstrumentalBehavior& beh) {
  const auto roots = branch_roots(beh);
  return diagonal_mass(beh) - 1.0 + std::max(roots[0], roots[1]);
}

double qace_lower_bound_parametric(const InstrumentalBehavior& p, double alpha) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const double denom = 1.0 + 2.0 * alpha;
  if (denom == 0.0) return kNegInf;
  const double beta = (1.0 + alpha) / denom;
  const double ab = alpha * beta;
  const double cd = (1.0 + alpha) * (1.0 - beta);
  if (!(ab * cd > 0.0)) return kNegInf;
  const double r = cd / ab;
  const auto s = outcome_contrasts(p);
  const double cap_half = 0.5 * std::abs(alpha + beta) * (std::sqrt(r) + 1.0 / std::sqrt(r));
  return 2.0 * (p(0, 0, 1) + p(1, 1, 1)) - 1.0 - alpha * s[0] - beta * s[1] - cap_half;
}

std::optional<double> stationary_alpha(const InstrumentalBehavior& beh, int branch) {
  const auto s = outcome_contrasts(beh);
  const double sign = branch >= 0 ? 1.0 : -1.0;
  const double num = sign + s[1];
  const double den = sign + s[0];
  if (den == 0.0 || num / den <= 0.0) return std::nullopt;
  return 0.5 * (sign * std::sqrt(num / den) - 1.0);
}

double nace_lower_bound(const InstrumentalBehavior& p) {
  return std::max(p(0, 0, 0), p(0, 0, 1)) + std::max(p(1, 1, 0), p(1, 1, 1)) - 1.0;
}

double nace_lower_bound_relabeled(const InstrumentalBehavior& p) {
  return std::max(p(0, 1, 0), p(0, 1, 1)) + std::max(p(1, 0, 0), p(1, 0, 1)) - 1.0;
}

double bell_expression(const BellBehavior& bell, const BellCoefficients& c) {
  return -c.alpha * correlator(bell, 0, 0) + c.beta * correlator(bell, 0, 1) +
         c.gamma * correlator(bell, 1, 0) + c.delta * correlator(bell, 1, 1);
}

double bell_expression_from_instrumental(const InstrumentalBehavior& p,
                                         const DoTable& q,
                                         const BellCoefficients& c) {
  const double q00 = q(0, 0), q01 = q(0, 1);
  return -c.alpha - c.beta + c.gamma - c.delta + 2.0 * q00 * (c.alpha - c.gamma) +
         2.0 * q01 * (c.beta + c.delta) - 2.0 * c.alpha * (p(0, 0, 0) - p(0, 1, 0)) +
         2.0 * c.beta * (p(1, 1, 0) - p(1, 0, 0)) +
         2.0 * c.gamma * (p(0, 0, 1) - p(0, 1, 1)) +
         2.0 * c.delta * (p(1, 1, 1) - p(1, 0, 1));
}

double cauchy_schwarz_rhs(const BellCoefficients& c, double xi) {
  const double first = c.alpha * c.alpha + c.beta * c.beta - c.alpha * c.beta * xi;
  const double second = c.gamma * c.gamma + c.delta * c.delta + c.gamma * c.delta * xi;
  return std::sqrt(first) + std::sqrt(second);
}

double cauchy_schwarz_xi(double alpha, double beta) {
  return alpha / beta + beta / alpha + (alpha + beta) / (1.0 + alpha) +
         (alpha + beta) / (beta - 1.0);
}

double cauchy_schwarz_cap(double alpha, double beta) {
  const double ab = alpha * beta;
  const double cd = (1.0 + alpha) * (1.0 - beta);
  if (!(ab * cd > 0.0)) {
    throw Error(Errc::domain, "Cauchy-Schwarz cap: requires alpha beta (1+alpha)(1-beta) > 0");
  }
  const double xi = cauchy_schwarz_xi(alpha, beta);
  if (!(xi >= -2.0 - 1e-9 && xi <= 2.0 + 1e-9)) {
    throw Error(Errc::domain,
                "Cauchy-Schwarz cap: stationary xi = " + std::to_string(xi) + " outside [-2, 2]");
  }
  const double r = cd / ab;
  return std::abs(alpha + beta) * (std::sqrt(r) + std::sqrt(1.0 / r));
}

double cauchy_schwarz_cap(const BellCoefficients& c) {
  if (std::abs(c.gamma - (1.0 + c.alpha)) > 1e-12 || std::abs(c.delta - (1.0 - c.beta)) > 1e-12) {
    throw Error(Errc::domain, "Cauchy-Schwarz cap: requires gamma = 1 + alpha, delta = 1 - beta");
  }
  return cauchy_schwarz_cap(c.alpha, c.beta);
}

BoundReport bound_report(const InstrumentalBehavior& beh) {
  BoundReport r;
  r.classical_six = cace_lower_bounds(beh);
  r.classical_max = *std::max_element(r.classical_six.begin(), r.classical_six.end());
  r.quantum = qace_lower_bound(beh);
  r.nonsignaling = nace_lower_bound(beh);
  r.classical_max_clamped = std::max(r.classical_max, 0.0);
  r.quantum_clamped = std::max(r.quantum, 0.0);
  r.nonsignaling_clamped = std::max(r.nonsignaling, 0.0);
  r.instrumental_slack = instrumental_inequality_slack(beh);
  return r;
}

}  // namespace qcause

#pragma once

#include <array>
#include <optional>

#include "qcause/scenario.hpp"

namespace qcause {

/// Six linear lower bounds on the classical ACE, in the standard order:
///   p(0,0|0) + p(1,1|1) - 1
///   p(1,1|0) + p(0,0|1) - 1
///   2p(0,0|0) + p(1,1|0) + p(0,1|1) + p(1,1|1) - 2
///   p(0,0|0) + 2p(1,1|0) + p(0,0|1) + p(1,0|1) - 2
///   p(0,1|0) + p(1,1|0) + 2p(0,0|1) + p(1,1|1) - 2
///   p(0,0|0) + p(1,0|0) + p(0,0|1) + 2p(1,1|1) - 2
/// Each one lower-bounds the signed effect q[0][0] - q[0][1].
std::array<double, 6> cace_lower_bounds(const InstrumentalBehavior& beh);

/// The third entry above; every "violation" in constructions is measured with it.
double cace_primary_bound(const InstrumentalBehavior& beh);

/// S_a = sum_x (-1)^x (p(a,0|x) - p(a,1|x)).
std::array<double, 2> outcome_contrasts(const InstrumentalBehavior& beh);

/// Device-independent lower bound on qACE for dichotomic measurements:
///
///   sum_x (p(0,0|x) + p(1,1|x)) - 1 - min_{+-} sqrt((1 +- S_0)(1 +- S_1)).
///
/// This is the Cauchy-Schwarz Bell-expression bound optimized over its free
/// parameter. Factors within -1e-9 of zero are clamped; a more negative
/// factor throws Error(Errc::domain) because no instrumental behavior
/// produces one.
double qace_lower_bound(const InstrumentalBehavior& beh);

/// Same leading terms but adding max_{+-} sqrt(...) instead of subtracting
/// the smaller root. Kept only to demonstrate in tests that this sign choice
/// exceeds the true qACE (e.g. it returns 3 on the deterministic chain).
double qace_expression_plus_max_root(const InstrumentalBehavior& beh);

/// One member of the parametric family, with beta = (1 + alpha)/(1 + 2 alpha):
///   2(p(0,0|1) + p(1,1|1)) - 1 - alpha S_0 - beta S_1
///     - |alpha + beta|/2 (sqrt(r) + 1/sqrt(r)),  r = (1+alpha)(1-beta)/(alpha beta).
/// Returns -infinity where the family is undefined (alpha in {-1/2, 0, -1}).
double qace_lower_bound_parametric(const InstrumentalBehavior& beh, double alpha);

/// Stationary alpha of the parametric family for the given root branch
/// (+1 or -1); nullopt when the branch is degenerate.
std::optional<double> stationary_alpha(const InstrumentalBehavior& beh, int branch);

/// Tight non-signaling bound max_x p(0,0|x) + max_x p(1,1|x) - 1 on the
/// signed effect q[0][0] - q[0][1].
double nace_lower_bound(const InstrumentalBehavior& beh);

/// The same bound after relabeling b <-> 1-b, i.e. on q[0][1] - q[0][0].
double nace_lower_bound_relabeled(const InstrumentalBehavior& beh);

struct BellCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

/// -alpha<M0N0> + beta<M0N1> + gamma<M1N0> + delta<M1N1>.
double bell_expression(const BellBehavior& bell, const BellCoefficients& c);

/// The Bell expression rewritten through instrumental data and do-probabilities
/// (used to cross-check the Bell route).
double bell_expression_from_instrumental(const InstrumentalBehavior& beh,
                                         const DoTable& table,
                                         const BellCoefficients& c);

/// Right-hand side of the Cauchy-Schwarz step as a function of
/// xi = <{N0, N1}>: sqrt(a^2 + b^2 - a b xi) + sqrt(g^2 + d^2 + g d xi).
double cauchy_schwarz_rhs(const BellCoefficients& c, double xi);

/// Stationary xi of cauchy_schwarz_rhs for gamma = 1 + alpha, delta = 1 - beta.
double cauchy_schwarz_xi(double alpha, double beta);

/// |alpha + beta| (sqrt(r) + 1/sqrt(r)), r = (1+alpha)(1-beta)/(alpha beta).
/// Throws Error(Errc::domain) unless alpha beta (1+alpha)(1-beta) > 0 and the
/// stationary xi lies in [-2, 2] (1e-9 slack).
double cauchy_schwarz_cap(double alpha, double beta);
/// Overload checking gamma = 1 + alpha and delta = 1 - beta.
double cauchy_schwarz_cap(const BellCoefficients& c);

struct BoundReport {
  std::array<double, 6> classical_six{};
  double classical_max = 0.0;
  double quantum = 0.0;
  double nonsignaling = 0.0;
  double classical_max_clamped = 0.0;
  double quantum_clamped = 0.0;
  double nonsignaling_clamped = 0.0;
  double instrumental_slack = 0.0;
};

BoundReport bound_report(const InstrumentalBehavior& beh);

}  // namespace qcause

#pragma once

#include <array>
#include <string>

namespace qcause {

/// Observed instrumental statistics p(a,b|x), indexed p[a][b][x].
struct InstrumentalBehavior {
  std::array<std::array<std::array<double, 2>, 2>, 2> p{};

  double operator()(int a, int b, int x) const { return p[a][b][x]; }
  double& operator()(int a, int b, int x) { return p[a][b][x]; }

  static InstrumentalBehavior uniform();
  /// a = x and b = a with certainty.
  static InstrumentalBehavior deterministic_chain();

  friend bool operator==(const InstrumentalBehavior&, const InstrumentalBehavior&) = default;
};

/// Interventional distribution q[b][a] = p(b|do(a)).
struct DoTable {
  std::array<std::array<double, 2>, 2> q{};

  double operator()(int b, int a) const { return q[b][a]; }
  double& operator()(int b, int a) { return q[b][a]; }

  friend bool operator==(const DoTable&, const DoTable&) = default;
};

/// Two-input two-output Bell table p(a,b|x,y), indexed p[a][b][x][y].
struct BellBehavior {
  std::array<std::array<std::array<std::array<double, 2>, 2>, 2>, 2> p{};

  double operator()(int a, int b, int x, int y) const { return p[a][b][x][y]; }
  double& operator()(int a, int b, int x, int y) { return p[a][b][x][y]; }

  friend bool operator==(const BellBehavior&, const BellBehavior&) = default;
};

// Validation throws Error(Errc::invalid_probability) (or Errc::signaling for
// Bell tables) with a diagnostic naming the offending entry or setting.
void validate(const InstrumentalBehavior& beh);
void validate(const DoTable& table);
void validate(const BellBehavior& bell);

/// Empty string when valid, otherwise the diagnostic validate() would throw.
std::string diagnose(const InstrumentalBehavior& beh);

/// Rescales each setting's block to sum to one. Never applied implicitly.
InstrumentalBehavior renormalized(const InstrumentalBehavior& beh);

/// Average causal effect max_{a,a',b} (q[b][a] - q[b][a']).
double ace(const DoTable& table);

/// Signed effect q[0][0] - q[0][1]; ace() is its absolute value.
double ace_signed(const DoTable& table);

/// max_a sum_b max_x p(a,b|x) - 1. Non-positive iff every instrumental
/// inequality holds.
double instrumental_inequality_slack(const InstrumentalBehavior& beh);

/// p(a,b|x) = p_Bell(a,b|x,y=a).
InstrumentalBehavior instrumental_from_bell(const BellBehavior& bell);

/// q[b][a] = sum_a' p_Bell(a',b|x_probe,a). Throws Errc::signaling if the
/// other input value would give a different table.
DoTable do_from_bell(const BellBehavior& bell, int x_probe = 0);

/// The unobserved Bell entry p_Bell(a,b|x,a') for a != a', recovered as
/// q[b][a'] - p(a',b|x). Negative values mean (beh, table) is inconsistent.
double hidden_bell_entry(const InstrumentalBehavior& beh, const DoTable& table,
                         int a_prime, int b, int x);

/// True when hidden_bell_entry >= -tolerance for every argument.
bool consistent_pair(const InstrumentalBehavior& beh, const DoTable& table,
                     double tolerance);

/// Largest violation of the no-signaling equalities.
double signaling_residual(const BellBehavior& bell);

/// <M^x N^y> = sum_{a,b} (-1)^(a+b) p(a,b|x,y).
double correlator(const BellBehavior& bell, int x, int y);

}  // namespace qcause

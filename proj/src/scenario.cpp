#include "qcause/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcause/error.hpp"
#include "qcause/tolerances.hpp"

namespace qcause {

InstrumentalBehavior InstrumentalBehavior::uniform() {
  InstrumentalBehavior beh;
  for (auto& row : beh.p)
    for (auto& col : row) col = {0.25, 0.25};
  return beh;
}

InstrumentalBehavior InstrumentalBehavior::deterministic_chain() {
  InstrumentalBehavior beh;
  beh(0, 0, 0) = 1.0;
  beh(1, 1, 1) = 1.0;
  return beh;
}

namespace {

bool in_unit_interval(double v) {
  return std::isfinite(v) && v >= -tol::kProbability && v <= 1.0 + tol::kProbability;
}

}  // namespace

std::string diagnose(const InstrumentalBehavior& beh) {
  std::ostringstream msg;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        if (!in_unit_interval(beh(a, b, x))) {
          msg << "p(" << a << "," << b << "|" << x << ") = " << beh(a, b, x)
              << " outside [0,1]";
          return msg.str();
        }
  for (int x = 0; x < 2; ++x) {
    double sum = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) sum += beh(a, b, x);
    if (std::abs(sum - 1.0) > tol::kProbability) {
      msg.precision(17);
      msg << "sum_ab p(a,b|" << x << ") = " << sum << ", off by " << (sum - 1.0);
      return msg.str();
    }
  }
  return {};
}

void validate(const InstrumentalBehavior& beh) {
  if (auto why = diagnose(beh); !why.empty()) {
    throw Error(Errc::invalid_probability, "instrumental behavior: " + why);
  }
}

void validate(const DoTable& table) {
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b)
      if (!in_unit_interval(table(b, a))) {
        throw Error(Errc::invalid_probability,
                    "do-table: entry outside [0,1] at b=" + std::to_string(b) +
                        ", a=" + std::to_string(a));
      }
    if (std::abs(table(0, a) + table(1, a) - 1.0) > tol::kProbability) {
      throw Error(Errc::invalid_probability,
                  "do-table: column a=" + std::to_string(a) + " does not sum to 1");
    }
  }
}

void validate(const BellBehavior& bell) {
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double sum = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          if (!in_unit_interval(bell(a, b, x, y))) {
            throw Error(Errc::invalid_probability, "Bell behavior: entry outside [0,1]");
          }
          sum += bell(a, b, x, y);
        }
      if (std::abs(sum - 1.0) > tol::kProbability) {
        throw Error(Errc::invalid_probability,
                    "Bell behavior: block (x=" + std::to_string(x) +
                        ", y=" + std::to_string(y) + ") does not sum to 1");
      }
    }
  if (const double r = signaling_residual(bell); r > tol::kSignaling) {
    throw Error(Errc::signaling, "Bell behavior: signaling residual " + std::to_string(r));
  }
}

InstrumentalBehavior renormalized(const InstrumentalBehavior& beh) {
  InstrumentalBehavior out = beh;
  for (int x = 0; x < 2; ++x) {
    double sum = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) sum += beh(a, b, x);
    if (sum <= 0.0) {
      throw Error(Errc::invalid_probability, "renormalized: empty setting block");
    }
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out(a, b, x) = beh(a, b, x) / sum;
  }
  return out;
}

double ace_signed(const DoTable& table) { return table(0, 0) - table(0, 1); }

double ace(const DoTable& table) {
  double best = 0.0;
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap) best = std::max(best, table(b, a) - table(b, ap));
  return best;
}

double instrumental_inequality_slack(const InstrumentalBehavior& beh) {
  double worst = -1.0;
  for (int a = 0; a < 2; ++a) {
    double lhs = 0.0;
    for (int b = 0; b < 2; ++b) lhs += std::max(beh(a, b, 0), beh(a, b, 1));
    worst = std::max(worst, lhs - 1.0);
  }
  return worst;
}

InstrumentalBehavior instrumental_from_bell(const BellBehavior& bell) {
  InstrumentalBehavior beh;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x) beh(a, b, x) = bell(a, b, x, a);
  return beh;
}

namespace {

DoTable do_from_bell_unchecked(const BellBehavior& bell, int x) {
  DoTable table;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) table(b, a) = bell(0, b, x, a) + bell(1, b, x, a);
  return table;
}

}  // namespace

DoTable do_from_bell(const BellBehavior& bell, int x_probe) {
  if (x_probe != 0 && x_probe != 1) {
    throw Error(Errc::domain, "do_from_bell: x_probe must be 0 or 1");
  }
  const DoTable probe = do_from_bell_unchecked(bell, x_probe);
  const DoTable other = do_from_bell_unchecked(bell, 1 - x_probe);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      if (std::abs(probe(b, a) - other(b, a)) > tol::kSignaling) {
        throw Error(Errc::signaling,
                    "do_from_bell: reconstruction depends on x (Bob's marginal signals)");
      }
  return probe;
}

double hidden_bell_entry(const InstrumentalBehavior& beh, const DoTable& table,
                         int a_prime, int b, int x) {
  return table(b, a_prime) - beh(a_prime, b, x);
}

bool consistent_pair(const InstrumentalBehavior& beh, const DoTable& table,
                     double tolerance) {
  for (int ap = 0; ap < 2; ++ap)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        if (hidden_bell_entry(beh, table, ap, b, x) < -tolerance) return false;
  return true;
}

double signaling_residual(const BellBehavior& bell) {
  double worst = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      const double y0 = bell(a, 0, x, 0) + bell(a, 1, x, 0);
      const double y1 = bell(a, 0, x, 1) + bell(a, 1, x, 1);
      worst = std::max(worst, std::abs(y0 - y1));
    }
  for (int y = 0; y < 2; ++y)
    for (int b = 0; b < 2; ++b) {
      const double x0 = bell(0, b, 0, y) + bell(1, b, 0, y);
      const double x1 = bell(0, b, 1, y) + bell(1, b, 1, y);
      worst = std::max(worst, std::abs(x0 - x1));
    }
  return worst;
}

double correlator(const BellBehavior& bell, int x, int y) {
  double e = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) e += ((a + b) % 2 == 0 ? 1.0 : -1.0) * bell(a, b, x, y);
  return e;
}

}  // namespace qcause

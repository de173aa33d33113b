#include "qcause/polytopes.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "qcause/error.hpp"
#include "qcause/lp.hpp"

namespace qcause {

InstrumentalBehavior DeterministicStrategy::behavior() const {
  InstrumentalBehavior beh;
  for (int x = 0; x < 2; ++x) {
    const int a = f[x];
    beh(a, g[a], x) = 1.0;
  }
  return beh;
}

DoTable DeterministicStrategy::do_table() const {
  DoTable table;
  for (int a = 0; a < 2; ++a) table(g[a], a) = 1.0;
  return table;
}

std::vector<DeterministicStrategy> deterministic_strategies() {
  std::vector<DeterministicStrategy> out;
  out.reserve(16);
  for (int fi = 0; fi < 4; ++fi)
    for (int gi = 0; gi < 4; ++gi)
      out.push_back({{fi >> 1, fi & 1}, {gi >> 1, gi & 1}});
  return out;
}

std::vector<BehaviorDoPair> local_strategies() {
  std::vector<BehaviorDoPair> out;
  for (const auto& s : deterministic_strategies()) out.push_back({s.behavior(), s.do_table()});
  return out;
}

namespace {

LinearProgram mixture_lp(const InstrumentalBehavior& beh,
                         const std::vector<BehaviorDoPair>& vertices, double sense) {
  LinearProgram lp;
  const std::size_t n = vertices.size();
  lp.objective.resize(n);
  for (std::size_t v = 0; v < n; ++v) lp.objective[v] = sense * ace_signed(vertices[v].table);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x) {
        std::vector<double> row(n);
        for (std::size_t v = 0; v < n; ++v) row[v] = vertices[v].behavior(a, b, x);
        lp.a_eq.push_back(std::move(row));
        lp.b_eq.push_back(beh(a, b, x));
      }
  lp.a_eq.emplace_back(n, 1.0);
  lp.b_eq.push_back(1.0);
  return lp;
}

}  // namespace

AceInterval tight_interval(const InstrumentalBehavior& beh,
                           const std::vector<BehaviorDoPair>& vertices) {
  AceInterval out;
  const auto lo = lp_solve(mixture_lp(beh, vertices, +1.0));
  if (lo.status == LpStatus::infeasible) return out;
  if (lo.status != LpStatus::optimal) {
    throw Error(Errc::infeasible, std::string("tight_interval: LP ") + to_string(lo.status));
  }
  const auto hi = lp_solve(mixture_lp(beh, vertices, -1.0));
  if (hi.status != LpStatus::optimal) {
    throw Error(Errc::infeasible, std::string("tight_interval: LP ") + to_string(hi.status));
  }
  out.feasible = true;
  out.delta_min = lo.optimum;
  out.delta_max = -hi.optimum;
  if (out.delta_min <= 0.0 && out.delta_max >= 0.0) {
    out.min_ace = 0.0;
  } else {
    out.min_ace = std::min(std::abs(out.delta_min), std::abs(out.delta_max));
  }
  out.max_ace = std::max(std::abs(out.delta_min), std::abs(out.delta_max));
  return out;
}

AceInterval cace_tight_interval(const InstrumentalBehavior& beh) {
  static const auto vertices = local_strategies();
  return tight_interval(beh, vertices);
}

BellBehavior pr_box(int e, int z, int h) {
  BellBehavior bell;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          const int target = (x * y) ^ (e * x) ^ (z * y) ^ h;
          bell(a, b, x, y) = ((a ^ b) == target) ? 0.5 : 0.0;
        }
  return bell;
}

namespace {

std::size_t flat(int a, int b, int x, int y) {
  return static_cast<std::size_t>(((a * 2 + b) * 2 + x) * 2 + y);
}

}  // namespace

std::vector<std::vector<double>> ns_equality_rows() {
  std::vector<std::vector<double>> rows;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      std::vector<double> row(16, 0.0);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) row[flat(a, b, x, y)] = 1.0;
      rows.push_back(std::move(row));
    }
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      std::vector<double> row(16, 0.0);
      for (int b = 0; b < 2; ++b) {
        row[flat(a, b, x, 0)] += 1.0;
        row[flat(a, b, x, 1)] -= 1.0;
      }
      rows.push_back(std::move(row));
    }
  for (int y = 0; y < 2; ++y)
    for (int b = 0; b < 2; ++b) {
      std::vector<double> row(16, 0.0);
      for (int a = 0; a < 2; ++a) {
        row[flat(a, b, 0, y)] += 1.0;
        row[flat(a, b, 1, y)] -= 1.0;
      }
      rows.push_back(std::move(row));
    }
  return rows;
}

bool is_ns_vertex(const BellBehavior& bell) {
  try {
    validate(bell);
  } catch (const Error&) {
    return false;
  }
  auto rows = ns_equality_rows();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          if (std::abs(bell(a, b, x, y)) <= 1e-12) {
            std::vector<double> unit(16, 0.0);
            unit[flat(a, b, x, y)] = 1.0;
            rows.push_back(std::move(unit));
          }
  return matrix_rank(std::move(rows)) == 16;
}

std::vector<NSVertex> ns_vertices() {
  std::vector<NSVertex> out;
  for (int fi = 0; fi < 4; ++fi)
    for (int gi = 0; gi < 4; ++gi) {
      const int f[2] = {fi >> 1, fi & 1};
      const int g[2] = {gi >> 1, gi & 1};
      NSVertex v;
      v.kind = NSVertex::Kind::local;
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) v.bell(f[x], g[y], x, y) = 1.0;
      out.push_back(v);
    }
  for (int e = 0; e < 2; ++e)
    for (int z = 0; z < 2; ++z)
      for (int h = 0; h < 2; ++h) out.push_back({pr_box(e, z, h), NSVertex::Kind::pr_box});
  for (const auto& v : out)
    if (!is_ns_vertex(v.bell)) {
      throw Error(Errc::infeasible, "ns_vertices: hardcoded vertex failed the extremality check");
    }
  return out;
}

std::vector<BehaviorDoPair> mapped_ns_vertices() {
  std::vector<BehaviorDoPair> out;
  for (const auto& v : ns_vertices())
    out.push_back({instrumental_from_bell(v.bell), do_from_bell(v.bell, 0)});
  return out;
}

AceInterval nace_tight_interval(const InstrumentalBehavior& beh) {
  static const auto vertices = mapped_ns_vertices();
  return tight_interval(beh, vertices);
}

std::optional<double> nace_tight(const InstrumentalBehavior& beh) {
  const auto interval = nace_tight_interval(beh);
  if (!interval.feasible) return std::nullopt;
  return interval.min_ace;
}

}  // namespace qcause

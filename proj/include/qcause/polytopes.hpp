#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qcause/scenario.hpp"

namespace qcause {

/// Deterministic response functions a = f(x), b = g(a).
struct DeterministicStrategy {
  std::array<int, 2> f{};
  std::array<int, 2> g{};

  InstrumentalBehavior behavior() const;
  DoTable do_table() const;
};

/// A point of a (behavior, do-table) polytope.
struct BehaviorDoPair {
  InstrumentalBehavior behavior;
  DoTable table;
};

/// All 16 strategies, f-major: index = 4 * (2 f(0) + f(1)) + (2 g(0) + g(1)).
std::vector<DeterministicStrategy> deterministic_strategies();
std::vector<BehaviorDoPair> local_strategies();

struct AceInterval {
  bool feasible = false;
  double delta_min = 0.0;  // min of q[0][0] - q[0][1] over compatible models
  double delta_max = 0.0;
  double min_ace = 0.0;    // min |delta|
  double max_ace = 0.0;    // max |delta|
};

/// Range of the signed effect over all convex combinations of `vertices`
/// reproducing `beh`. Two LPs; |delta| folded afterwards.
AceInterval tight_interval(const InstrumentalBehavior& beh,
                           const std::vector<BehaviorDoPair>& vertices);

/// Tight classical interval (mixtures of the 16 strategies).
AceInterval cace_tight_interval(const InstrumentalBehavior& beh);

struct NSVertex {
  enum class Kind { local, pr_box };
  BellBehavior bell;
  Kind kind = Kind::local;
};

/// a xor b = x y xor e x xor z y xor h, uniform marginals.
BellBehavior pr_box(int e = 0, int z = 0, int h = 0);

/// 16 local deterministic vertices (f-major, then g) followed by the 8 PR
/// variants in (e, z, h) binary order. Each is checked by is_ns_vertex.
std::vector<NSVertex> ns_vertices();

/// Equality constraints (normalization + no-signaling) of the Bell polytope,
/// over the 16 entries flattened as ((a*2 + b)*2 + x)*2 + y.
std::vector<std::vector<double>> ns_equality_rows();

/// Extremality: the NS equalities plus the tight positivity constraints
/// (zero entries) have full rank 16, and the point is a valid NS behavior.
bool is_ns_vertex(const BellBehavior& bell);

/// Images of ns_vertices() under (instrumental_from_bell, do_from_bell).
std::vector<BehaviorDoPair> mapped_ns_vertices();

/// Tight non-signaling interval.
AceInterval nace_tight_interval(const InstrumentalBehavior& beh);

/// Tight non-signaling minimum ACE; nullopt outside the mapped projection.
std::optional<double> nace_tight(const InstrumentalBehavior& beh);

}  // namespace qcause

#include "qcause/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcause/bounds.hpp"
#include "qcause/error.hpp"
#include "qcause/polytopes.hpp"
#include "qcause/samplers.hpp"
#include "qcause/tolerances.hpp"

namespace qcause {

namespace {

int g_default_threads = 0;

SweepResult summarize(const std::vector<double>& excess, double tol) {
  SweepResult r;
  r.samples = excess.size();
  for (std::size_t i = 0; i < excess.size(); ++i) {
    if (i == 0 || excess[i] > r.worst) {
      r.worst = excess[i];
      r.worst_index = i;
    }
    if (excess[i] > tol) ++r.failures;
  }
  return r;
}

double classical_max(const InstrumentalBehavior& beh) {
  const auto six = cace_lower_bounds(beh);
  return *std::max_element(six.begin(), six.end());
}

}  // namespace

void set_thread_count(int jobs) {
  if (g_default_threads == 0) g_default_threads = omp_get_max_threads();
  omp_set_num_threads(jobs > 0 ? jobs : g_default_threads);
}

int thread_count() { return omp_get_max_threads(); }

std::uint64_t item_seed(std::uint64_t base, std::size_t index) {
  return base ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1));
}

std::vector<double> evaluate_parallel(const ObjectiveN& f,
                                      const std::vector<std::vector<double>>& points) {
  return map_indexed(points.size(), Exec::parallel,
                     [&](std::size_t i) { return f(points[i]); });
}

BatchEvaluator batch_evaluator(Exec exec) {
  if (exec == Exec::parallel) return evaluate_parallel;
  return evaluate_serial;
}

InstrumentalBehavior region_slice(double s, double t) {
  InstrumentalBehavior beh;
  const double p00[2] = {s, t};
  for (int x = 0; x < 2; ++x) {
    beh(0, 0, x) = p00[x];
    beh(0, 1, x) = 0.5 - p00[x];
    beh(1, 0, x) = 0.0;
    beh(1, 1, x) = 0.5;
  }
  return beh;
}

std::vector<RegionCell> region_grid(int n, Exec exec) {
  if (n < 2) throw Error(Errc::domain, "region_grid: need at least 2 points per axis");
  const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  return map_indexed(count, exec, [n](std::size_t k) {
    RegionCell c;
    c.i = static_cast<int>(k / static_cast<std::size_t>(n));
    c.j = static_cast<int>(k % static_cast<std::size_t>(n));
    c.p000 = 0.5 * c.i / (n - 1);
    c.p001 = 0.5 * c.j / (n - 1);
    const auto beh = region_slice(c.p000, c.p001);
    c.classical = classical_max(beh);
    c.quantum = qace_lower_bound(beh);
    c.nonsignaling = nace_lower_bound(beh);
    c.classical_positive = c.classical > tol::kPositive;
    c.quantum_positive = c.quantum > tol::kPositive;
    c.ns_nonnegative = c.nonsignaling >= -tol::kPositive;
    return c;
  });
}

RegionCounts region_counts(const std::vector<RegionCell>& cells, int n) {
  RegionCounts r;
  r.ns_exactly_on_lines = true;
  for (const auto& c : cells) {
    r.classical += c.classical_positive;
    r.quantum += c.quantum_positive;
    r.nonsignaling += c.ns_nonnegative;
    r.quantum_only += c.quantum_positive && !c.classical_positive;
    r.classical_only += c.classical_positive && !c.quantum_positive;
    const bool on_line = c.i == n - 1 || c.j == n - 1;
    if (on_line != c.ns_nonnegative) r.ns_exactly_on_lines = false;
  }
  return r;
}

std::vector<CurvePoint> alpha_curve(int steps, Exec exec) {
  if (steps < 2) throw Error(Errc::domain, "alpha_curve: need at least 2 steps");
  return map_indexed(static_cast<std::size_t>(steps), exec, [steps](std::size_t k) {
    return v_alpha(std::numbers::pi / 4.0 * static_cast<double>(k) / (steps - 1));
  });
}

std::vector<CurvePoint> phi_curve(int steps, Exec exec) {
  if (steps < 2) throw Error(Errc::domain, "phi_curve: need at least 2 steps");
  return map_indexed(static_cast<std::size_t>(steps), exec, [steps](std::size_t k) {
    return v_phi(std::numbers::pi / 2.0 * static_cast<double>(k) / (steps - 1));
  });
}

SweepResult quantum_bound_sweep(std::size_t n, std::uint64_t seed, Exec exec, double tol) {
  return summarize(map_indexed(n, exec,
                               [seed](std::size_t i) {
                                 Rng rng(item_seed(seed, i));
                                 const auto m = random_qubit_model(rng);
                                 return qace_lower_bound(behavior(m)) - qace(m);
                               }),
                   tol);
}

SweepResult quantum_slack_sweep(std::size_t n, std::uint64_t seed, Exec exec, double tol) {
  return summarize(map_indexed(n, exec,
                               [seed](std::size_t i) {
                                 Rng rng(item_seed(seed, i));
                                 return instrumental_inequality_slack(
                                     behavior(random_qubit_model(rng)));
                               }),
                   tol);
}

SweepResult separable_sweep(std::size_t n, std::uint64_t seed, Exec exec, double tol) {
  return summarize(map_indexed(n, exec,
                               [seed](std::size_t i) {
                                 Rng rng(item_seed(seed, i));
                                 const auto m = random_separable_model(rng);
                                 return classical_max(behavior(m)) - qace(m);
                               }),
                   tol);
}

SweepResult compatible_sweep(std::size_t n, std::uint64_t seed, Exec exec, double tol) {
  return summarize(map_indexed(n, exec,
                               [seed](std::size_t i) {
                                 Rng rng(item_seed(seed, i));
                                 const auto m = random_compatible_bob_model(rng);
                                 return classical_max(behavior(m)) - qace(m);
                               }),
                   tol);
}

std::vector<std::array<double, 2>> admissible_cap_pairs(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::array<double, 2>> out;
  while (out.size() < n) {
    const double a = rng.uniform(-3.0, 3.0);
    const double b = rng.uniform(-3.0, 3.0);
    try {
      (void)cauchy_schwarz_cap(a, b);
      out.push_back({a, b});
    } catch (const Error&) {
    }
  }
  return out;
}

SweepResult bell_cap_sweep(std::size_t n_models, std::size_t n_pairs, std::uint64_t seed,
                           Exec exec, double tol) {
  const auto pairs = admissible_cap_pairs(n_pairs, seed);
  const auto per_model = map_indexed(n_models, exec, [&](std::size_t i) {
    Rng rng(item_seed(seed, i));
    const auto bell = bell_behavior(random_qubit_model(rng));
    std::vector<double> excess;
    excess.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
      const BellCoefficients c{a, b, 1.0 + a, 1.0 - b};
      excess.push_back(bell_expression(bell, c) - cauchy_schwarz_cap(c));
    }
    return excess;
  });
  std::vector<double> flat;
  for (const auto& v : per_model) flat.insert(flat.end(), v.begin(), v.end());
  return summarize(flat, tol);
}

TightnessResult ns_tightness_sweep(std::size_t n, std::uint64_t seed, Exec exec, bool orient,
                                   double tol) {
  struct Item {
    bool feasible = false;
    bool reoriented = false;
    double deviation = 0.0;
  };
  const auto items = map_indexed(n, exec, [seed, orient](std::size_t i) {
    Rng rng(item_seed(seed, i));
    auto bell = random_ns_mixture(rng);
    Item it;
    if (orient && ace_signed(do_from_bell(bell, 0)) < 0.0) {
      bell = relabel_b(bell);
      it.reoriented = true;
    }
    const auto beh = instrumental_from_bell(bell);
    const auto tight = nace_tight(beh);
    if (!tight) return it;
    it.feasible = true;
    it.deviation = *tight - std::max(nace_lower_bound(beh), 0.0);
    return it;
  });
  TightnessResult r;
  r.samples = n;
  for (const auto& it : items) {
    r.reoriented += it.reoriented;
    if (!it.feasible) {
      ++r.infeasible;
      continue;
    }
    r.gaps.push_back(it.deviation);
    r.max_deviation = std::max(r.max_deviation, std::abs(it.deviation));
    if (std::abs(it.deviation) > tol) ++r.failures;
  }
  return r;
}

TightnessResult classical_tightness_sweep(std::size_t n, std::uint64_t seed, Exec exec,
                                          double tol) {
  struct Item {
    bool feasible = false;
    double gap = 0.0;
  };
  const auto items = map_indexed(n, exec, [seed](std::size_t i) {
    Rng rng(item_seed(seed, i));
    const auto mix = random_classical_mixture(rng);
    const auto interval = cace_tight_interval(mix.behavior);
    Item it;
    if (!interval.feasible) return it;
    it.feasible = true;
    it.gap = interval.min_ace - classical_max(mix.behavior);
    return it;
  });
  TightnessResult r;
  r.samples = n;
  for (const auto& it : items) {
    if (!it.feasible) {
      ++r.infeasible;
      ++r.failures;
      continue;
    }
    r.gaps.push_back(it.gap);
    r.max_deviation = std::max(r.max_deviation, -it.gap);
    if (it.gap < -tol) ++r.failures;
  }
  return r;
}

std::vector<std::size_t> histogram(const std::vector<double>& values,
                                   const std::vector<double>& edges) {
  if (edges.size() < 2) throw Error(Errc::domain, "histogram: need at least two edges");
  std::vector<std::size_t> counts(edges.size() - 1, 0);
  for (double v : values) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    auto bin = static_cast<std::ptrdiff_t>(it - edges.begin()) - 1;
    bin = std::clamp<std::ptrdiff_t>(bin, 0, static_cast<std::ptrdiff_t>(counts.size()) - 1);
    ++counts[static_cast<std::size_t>(bin)];
  }
  return counts;
}

}  // namespace qcause

#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

#include "qcause/constructions.hpp"
#include "qcause/optimize.hpp"
#include "qcause/scenario.hpp"

namespace qcause {

enum class Exec { serial, parallel };

/// Sets the OpenMP team size for Exec::parallel; jobs <= 0 restores the default.
void set_thread_count(int jobs);
int thread_count();

/// out[i] = fn(i) for i < n. Exec::parallel spreads indices over OpenMP
/// threads; results are stored by index so both modes give the same vector.
/// The first exception thrown by fn (lowest index) is rethrown.
template <class F>
auto map_indexed(std::size_t n, Exec exec, F&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Seed for item i of a seeded sweep; every item owns an independent stream.
std::uint64_t item_seed(std::uint64_t base, std::size_t index);

std::vector<double> evaluate_parallel(const ObjectiveN& f,
                                      const std::vector<std::vector<double>>& points);
BatchEvaluator batch_evaluator(Exec exec);

// ---- region slice ---------------------------------------------------------

/// p(0,0|0) = s, p(0,0|1) = t, p(1,0|x) = 0, p(0,1|x) = 1/2 - p(0,0|x),
/// p(1,1|x) = 1/2.
InstrumentalBehavior region_slice(double s, double t);

struct RegionCell {
  int i = 0;
  int j = 0;
  double p000 = 0.0;
  double p001 = 0.0;
  double classical = 0.0;
  double quantum = 0.0;
  double nonsignaling = 0.0;
  bool classical_positive = false;   // > 1e-9
  bool quantum_positive = false;     // > 1e-9
  bool ns_nonnegative = false;       // >= -1e-9
};

/// n x n grid over [0, 1/2]^2, row-major in (i over p(0,0|0), j over p(0,0|1)).
std::vector<RegionCell> region_grid(int n, Exec exec);

struct RegionCounts {
  std::size_t classical = 0;
  std::size_t quantum = 0;
  std::size_t nonsignaling = 0;
  std::size_t quantum_only = 0;    // quantum positive, classical not
  std::size_t classical_only = 0;  // classical positive, quantum not
  bool ns_exactly_on_lines = false;
};

RegionCounts region_counts(const std::vector<RegionCell>& cells, int n);

// ---- curves ---------------------------------------------------------------

/// steps points alpha_k = (pi/4) k / (steps - 1).
std::vector<CurvePoint> alpha_curve(int steps, Exec exec);
/// steps points phi_k = (pi/2) k / (steps - 1).
std::vector<CurvePoint> phi_curve(int steps, Exec exec);

// ---- property sweeps ------------------------------------------------------

/// Largest signed excess of a sweep (bound minus reference); a sample fails
/// when its excess is above the sweep's tolerance.
struct SweepResult {
  std::size_t samples = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  std::size_t worst_index = 0;
};

/// qace_lower_bound(behavior) - qace on random pure two-qubit projective models.
SweepResult quantum_bound_sweep(std::size_t n, std::uint64_t seed, Exec exec, double tol = 1e-8);
/// instrumental_inequality_slack(behavior) on the same models.
SweepResult quantum_slack_sweep(std::size_t n, std::uint64_t seed, Exec exec, double tol = 1e-9);
/// classical_max(behavior) - qace on separable-state models.
SweepResult separable_sweep(std::size_t n, std::uint64_t seed, Exec exec, double tol = 1e-8);
/// classical_max(behavior) - qace on compatible-Bob models.
SweepResult compatible_sweep(std::size_t n, std::uint64_t seed, Exec exec, double tol = 1e-8);
/// bell_expression - cauchy_schwarz_cap over n_models x n_pairs combinations.
SweepResult bell_cap_sweep(std::size_t n_models, std::size_t n_pairs, std::uint64_t seed,
                           Exec exec, double tol = 1e-8);

/// Admissible (alpha, beta) pairs for the Cauchy-Schwarz cap, by rejection
/// from [-3, 3]^2.
std::vector<std::array<double, 2>> admissible_cap_pairs(std::size_t n, std::uint64_t seed);

struct TightnessResult {
  std::size_t samples = 0;
  std::size_t infeasible = 0;
  std::size_t failures = 0;
  std::size_t reoriented = 0;
  double max_deviation = 0.0;
  std::vector<double> gaps;
};

/// Random NS mixtures; |nace_tight - max(nace_lower_bound, 0)| per sample.
/// With `orient`, a mixture whose signed effect is negative is first relabeled
/// b <-> 1 - b, so that p(0|do(0)) >= p(0|do(1)) as the bound presumes.
TightnessResult ns_tightness_sweep(std::size_t n, std::uint64_t seed, Exec exec, bool orient,
                                   double tol = 1e-8);

/// Random classical mixtures; gap = cace_tight_interval.min_ace - classical_max,
/// failure when the gap is below -tol.
TightnessResult classical_tightness_sweep(std::size_t n, std::uint64_t seed, Exec exec,
                                          double tol = 1e-8);

/// Counts per bin [edges[k], edges[k+1]); values outside go to the end bins.
std::vector<std::size_t> histogram(const std::vector<double>& values,
                                   const std::vector<double>& edges);

}  // namespace qcause

#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace qcause {

struct OptResult {
  std::vector<double> argmax;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

using Objective1 = std::function<double(double)>;
using ObjectiveN = std::function<double(std::span<const double>)>;

/// Maps a batch of points to objective values, in order. Lets callers plug a
/// parallel evaluator into grid_refine without changing its results.
using BatchEvaluator =
    std::function<std::vector<double>(const ObjectiveN&, const std::vector<std::vector<double>>&)>;

std::vector<double> evaluate_serial(const ObjectiveN& f,
                                    const std::vector<std::vector<double>>& points);

/// Brent's parabolic/golden-section search for a local maximum on [lo, hi].
/// The result is never worse than the best of f(lo), f(mid), f(hi).
/// Throws Error(Errc::non_finite) if f returns NaN or infinity.
OptResult brent_max(const Objective1& f, double lo, double hi, double tol = 1e-10,
                    int max_iter = 500);

/// Nelder-Mead simplex maximization (reflection 1, expansion 2, contraction
/// 1/2, shrink 1/2) started from `start` with initial edge lengths `scale`.
/// After convergence the simplex is rebuilt once around the incumbent; the
/// run ends when a restart no longer improves by more than tol.
OptResult nelder_mead_max(const ObjectiveN& f, std::vector<double> start,
                          std::vector<double> scale, double tol = 1e-12,
                          int max_iter = 20000);

/// Best of several Nelder-Mead runs; ties go to the lexicographically smallest
/// argmax.
OptResult multi_start_max(const ObjectiveN& f, const std::vector<std::vector<double>>& starts,
                          std::vector<double> scale, double tol = 1e-12, int max_iter = 20000);

/// Evaluates a regular grid (coarse_steps points per axis, endpoints included),
/// then repeatedly zooms by a factor 4 around the incumbent. The box centre is
/// the first incumbent and is only displaced by strictly better points, so a
/// constant objective returns the centre.
OptResult grid_refine(const ObjectiveN& f, std::vector<std::pair<double, double>> box,
                      int coarse_steps, int refine_rounds,
                      const BatchEvaluator& evaluate = evaluate_serial);

}  // namespace qcause

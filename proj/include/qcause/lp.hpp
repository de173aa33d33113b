#pragma once

#include <vector>

namespace qcause {

/// minimize objective . x  subject to  a_eq x = b_eq,  x >= 0.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> a_eq;  // one row per constraint
  std::vector<double> b_eq;
};

enum class LpStatus { optimal, infeasible, unbounded, stalled };

const char* to_string(LpStatus status) noexcept;

struct LpResult {
  LpStatus status = LpStatus::stalled;
  double optimum = 0.0;
  std::vector<double> solution;
  int iterations = 0;
};

/// Dense two-phase simplex with Bland's rule. Redundant equality rows are
/// detected after phase one and dropped. Throws Error(Errc::dimension_mismatch)
/// on inconsistent shapes; every other outcome is reported through status.
LpResult lp_solve(const LinearProgram& lp, int max_iterations = 10000);

/// Numerical rank by Gaussian elimination with partial pivoting.
int matrix_rank(std::vector<std::vector<double>> rows, double tolerance = 1e-9);

}  // namespace qcause

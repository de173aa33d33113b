#include "qcause/lp.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

#include "qcause/error.hpp"
#include "qcause/tolerances.hpp"

namespace qcause {

const char* to_string(LpStatus status) noexcept {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::stalled: return "stalled";
  }
  return "unknown";
}

namespace {

constexpr double kPivotEps = 1e-12;

/// Tableau over [original | artificial | rhs] with one reduced-cost row.
class Tableau {
 public:
  Tableau(const LinearProgram& lp)
      : m_(lp.b_eq.size()), n_(lp.objective.size()), width_(n_ + m_ + 1),
        rows_(m_, std::vector<double>(width_, 0.0)), cost_(width_, 0.0),
        basis_(m_), active_(m_, true) {
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = lp.b_eq[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = sign * lp.a_eq[i][j];
      rows_[i][n_ + i] = 1.0;
      rows_[i][width_ - 1] = sign * lp.b_eq[i];
      basis_[i] = n_ + i;
    }
  }

  /// Loads reduced costs for `c` (size n_ + m_) against the current basis.
  void price(const std::vector<double>& c) {
    for (std::size_t j = 0; j < width_; ++j) cost_[j] = j + 1 < width_ ? c[j] : 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) cost_[j] -= cb * rows_[i][j];
    }
  }

  /// Runs Bland-rule pivots over columns [0, column_limit). Returns status.
  LpStatus iterate(std::size_t column_limit, int& iterations, int max_iterations) {
    while (true) {
      std::size_t enter = column_limit;
      for (std::size_t j = 0; j < column_limit; ++j)
        if (cost_[j] < -tol::kLpFeasibility) {
          enter = j;
          break;
        }
      if (enter == column_limit) return LpStatus::optimal;
      if (iterations >= max_iterations) return LpStatus::stalled;

      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (!active_[i] || rows_[i][enter] <= kPivotEps) continue;
        const double ratio = rows_[i][width_ - 1] / rows_[i][enter];
        if (ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && leave < m_ && basis_[i] < basis_[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave == m_) return LpStatus::unbounded;
      pivot(leave, enter);
      ++iterations;
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / rows_[r][c];
    for (auto& v : rows_[r]) v *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || !active_[i]) continue;
      const double f = rows_[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) rows_[i][j] -= f * rows_[r][j];
    }
    const double f = cost_[c];
    if (f != 0.0)
      for (std::size_t j = 0; j < width_; ++j) cost_[j] -= f * rows_[r][j];
    basis_[r] = c;
  }

  /// Pivots basic artificials out; rows where that is impossible are redundant.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i] || basis_[i] < n_) continue;
      std::size_t col = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (std::abs(rows_[i][j]) > 1e-9) {
          col = j;
          break;
        }
      if (col == n_) {
        active_[i] = false;
      } else {
        pivot(i, col);
      }
    }
  }

  double objective_value() const { return -cost_[width_ - 1]; }

  std::vector<double> solution() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (active_[i] && basis_[i] < n_) x[basis_[i]] = rows_[i][width_ - 1];
    return x;
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }

 private:
  std::size_t m_, n_, width_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> cost_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
};

}  // namespace

LpResult lp_solve(const LinearProgram& lp, int max_iterations) {
  const std::size_t n = lp.objective.size();
  if (lp.a_eq.size() != lp.b_eq.size()) {
    throw Error(Errc::dimension_mismatch, "lp_solve: a_eq and b_eq differ in row count");
  }
  for (const auto& row : lp.a_eq)
    if (row.size() != n) throw Error(Errc::dimension_mismatch, "lp_solve: ragged constraint row");

  LpResult result;
  Tableau t(lp);
  const std::size_t m = t.m();

  std::vector<double> phase_one(n + m, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase_one[n + i] = 1.0;
  t.price(phase_one);
  result.status = t.iterate(n + m, result.iterations, max_iterations);
  if (result.status == LpStatus::stalled) return result;
  if (t.objective_value() > tol::kLpFeasibility) {
    result.status = LpStatus::infeasible;
    return result;
  }
  t.expel_artificials();

  std::vector<double> phase_two(n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase_two[j] = lp.objective[j];
  t.price(phase_two);
  result.status = t.iterate(n, result.iterations, max_iterations);
  if (result.status != LpStatus::optimal) return result;
  result.solution = t.solution();
  result.optimum = 0.0;
  for (std::size_t j = 0; j < n; ++j) result.optimum += lp.objective[j] * result.solution[j];
  return result;
}

int matrix_rank(std::vector<std::vector<double>> rows, double tolerance) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t best = r;
    for (std::size_t i = r + 1; i < rows.size(); ++i)
      if (std::abs(rows[i][c]) > std::abs(rows[best][c])) best = i;
    if (std::abs(rows[best][c]) <= tolerance) continue;
    std::swap(rows[r], rows[best]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      const double f = rows[i][c] / rows[r][c];
      if (f == 0.0) continue;
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

}  // namespace qcause

#pragma once

namespace qcause::tol {

/// Entrywise Hermiticity and POVM completeness.
inline constexpr double kOperator = 1e-10;
/// Minimum eigenvalue accepted as PSD.
inline constexpr double kPsd = 1e-10;
/// Normalization of probability tables.
inline constexpr double kProbability = 1e-9;
/// Non-signaling consistency of Bell tables and do-reconstruction.
inline constexpr double kSignaling = 1e-9;
/// Imaginary residue allowed in an expectation value.
inline constexpr double kImaginary = 1e-10;
/// Negative square-root factors of the quantum bound clamped to zero.
inline constexpr double kSqrtClamp = 1e-9;
/// Strict positivity threshold for a "non-trivial" bound.
inline constexpr double kPositive = 1e-9;
/// Bloch vector norm slack.
inline constexpr double kBloch = 1e-12;
/// Schmidt coefficient normalization.
inline constexpr double kSchmidt = 1e-12;
/// Feasibility and pivot tolerance of the simplex solver.
inline constexpr double kLpFeasibility = 1e-9;

}  // namespace qcause::tol

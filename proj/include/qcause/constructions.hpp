#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qcause/optimize.hpp"
#include "qcause/quantum.hpp"
#include "qcause/scenario.hpp"

namespace qcause {

/// Lambda = 2 sum_i l_{2i-1} l_{2i} over complete pairs; gamma = l_D^2 for odd
/// D, else 0.
struct EntanglementParams {
  double lambda = 0.0;
  double gamma = 0.0;
};

/// sum_i l_i |i,i> with l_1 >= ... >= l_D > 0 and sum l_i^2 = 1.
struct SchmidtState {
  std::vector<double> coeffs;
  ComplexMatrix rho;
  EntanglementParams params;

  std::size_t rank() const { return coeffs.size(); }
};

/// Throws Error(Errc::invalid_model) unless the coefficients are positive,
/// non-increasing and unit-normalized (1e-12).
SchmidtState schmidt_state(std::vector<double> coeffs);
EntanglementParams entanglement_params(const std::vector<double>& coeffs);

/// sin(t) (+)sigma_X + cos(t) (+)sigma_Z + Pi on C^dim, with floor(dim/2)
/// 2x2 blocks and Pi the last diagonal unit for odd dim.
ComplexMatrix family_observable(double angle, std::size_t dim);
Povm family_povm(double angle, std::size_t dim);

/// <M(theta) (x) N(phi)> = (1 - gamma) cos theta cos phi + Lambda sin theta sin phi + gamma.
double family_correlator(const EntanglementParams& params, double theta, double phi);

/// Schmidt state measured with the block family: Alice angles theta[x],
/// Bob angles phi[a].
QuantumInstrumentModel family_model(const SchmidtState& state, std::array<double, 2> theta,
                                    std::array<double, 2> phi);

struct GuaranteedViolation {
  double violation = 0.0;  // cace_primary_bound(behavior) - qace
  double formula = 0.0;    // (sqrt(1 + Lambda^2) - 1) / 4
  double theta1 = 0.0;
  QuantumInstrumentModel model;
};

/// theta0 = phi0 = 0, phi1 = pi/2, theta1 = pi/2 + arctan(1/Lambda).
/// Throws Error(Errc::domain) for rank-1 (product) states.
GuaranteedViolation guaranteed_violation(const SchmidtState& state);

/// cos(alpha)|00> + sin(alpha)|11> with projective x-z measurements:
/// Alice's observable for setting x along angle theta[x], Bob's for a along phi[a].
struct XzAngles {
  double alpha = 0.0;
  std::array<double, 2> theta{};
  std::array<double, 2> phi{};
};

/// Closed-form statistics for XzAngles:
///   <M(t) (x) N(f)> = cos t cos f + sin 2a sin t sin f,
///   <M(t)> = cos t cos 2a,  <N(f)> = cos f cos 2a.
InstrumentalBehavior xz_behavior(const XzAngles& angles);
DoTable xz_do_table(const XzAngles& angles);
/// The same configuration as matrices, for cross-checks and export.
QuantumInstrumentModel xz_model(const XzAngles& angles);
/// classical_max(behavior) - qace.
double xz_violation(const XzAngles& angles);

/// Restricted family phi1 = -phi0, theta1 = -pi/2 with theta0 maximized
/// analytically: theta0 = arccot((cos 2a + 3 cos phi0) / (sin 2a sin phi0)).
double family_theta0(double alpha, double phi0);
/// cace_primary_bound minus qACE on that family, theta0 already optimal.
double restricted_violation(double alpha, double phi0);

struct OptimalTwoQubit {
  double alpha = 0.0;
  double phi0 = 0.0;
  double theta0 = 0.0;
  XzAngles angles;
  QuantumInstrumentModel model;
  InstrumentalBehavior behavior;
  double qace = 0.0;
  double violation = 0.0;  // classical_max(behavior) - qace
};

/// alpha* = (arctan(1/sqrt(k)) + arctan(sqrt(k/2))) / 2, phi0* = arctan(2/sqrt(k)),
/// k = 3 sqrt 2 + 2.
OptimalTwoQubit optimal_two_qubit();

struct CurvePoint {
  double parameter = 0.0;
  double violation = 0.0;
  std::vector<double> argmax;  // internal parameters of the maximizer
};

/// max over phi0 in (0, pi/2) of restricted_violation(alpha, .) by Brent.
/// argmax = {phi0, theta0}.
CurvePoint v_alpha(double alpha);

/// Bob's observables along +phi and -phi; max over (alpha, theta0, theta1) of
/// xz_violation from 8 seeded Nelder-Mead starts. argmax = {alpha, theta0, theta1}.
CurvePoint v_phi(double phi);

/// Best v_phi over phi in [0, pi/2]: a coarse grid then factor-4 zooms.
OptResult v_phi_maximum(int steps, int refine_rounds,
                        const BatchEvaluator& evaluate = evaluate_serial);

/// Unrestricted two-qubit optimum at fixed alpha over all four x-z angles.
CurvePoint v_alpha_full(double alpha);

/// (|2 n0 + n1| + |n0 - n1| - 3) / 4.
double witness_value(const BlochVector& n0, const BlochVector& n1);
/// (sqrt(5 + 4c) + sqrt(2 - 2c) - 3) / 4 scaled for |n0| = |n1| = r:
/// (r (sqrt(5 + 4c) + sqrt(2 - 2c)) - 3) / 4.
double witness_of_overlap(double c, double r = 1.0);

struct WitnessResult {
  double witness = 0.0;
  double model_violation = 0.0;  // cace_primary_bound(behavior) - qace on `model`
  QuantumInstrumentModel model;
};

/// Maximally entangled state, Bob's effects (I + n_a.sigma)/2, Alice's effects
/// the transposed top eigenprojectors of 2 N^0_0 + N^1_0 and N^1_0 - N^0_0.
WitnessResult incompatibility_witness(const BlochVector& n0, const BlochVector& n1);

/// Brent maximum of witness_of_overlap over c in [-1, 1].
OptResult max_witness_over_overlap(double r = 1.0);

/// The r at which the maximal witness crosses zero, by bisection.
double noisy_incompatibility_threshold();

/// Isotropic state (1 - p) Phi+ + p I/4 measured along four x-z angles
/// (theta0, theta1, phi0, phi1); closed form.
InstrumentalBehavior isotropic_behavior(double noise, const std::array<double, 4>& angles);

/// max over the four angles of classical_max - qace (qace is 0 here).
CurvePoint isotropic_violation(double noise);

/// Noise level where the optimized violation crosses zero, bisected on
/// [lo, hi] until the bracket is narrower than tol.
double isotropic_threshold(double lo = 0.0, double hi = 0.5, double tol = 1e-7);

}  // namespace qcause

#include "qcause/constructions.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

#include "qcause/bounds.hpp"
#include "qcause/error.hpp"
#include "qcause/rng.hpp"
#include "qcause/tolerances.hpp"

namespace qcause {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::uint64_t kVPhiSeed = 0x5eed0001;
constexpr std::uint64_t kFullAlphaSeed = 0x5eed0002;
constexpr std::uint64_t kIsotropicSeed = 0x5eed0003;
constexpr int kStarts = 8;

double classical_max(const InstrumentalBehavior& beh) {
  const auto six = cace_lower_bounds(beh);
  double m = six[0];
  for (double v : six) m = std::max(m, v);
  return m;
}

}  // namespace

EntanglementParams entanglement_params(const std::vector<double>& coeffs) {
  EntanglementParams out;
  const std::size_t d = coeffs.size();
  for (std::size_t i = 0; i + 1 < d; i += 2) out.lambda += 2.0 * coeffs[i] * coeffs[i + 1];
  if (d % 2 == 1) out.gamma = coeffs[d - 1] * coeffs[d - 1];
  return out;
}

SchmidtState schmidt_state(std::vector<double> coeffs) {
  if (coeffs.empty()) throw Error(Errc::invalid_model, "Schmidt state needs at least one coefficient");
  double norm2 = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!std::isfinite(coeffs[i]) || coeffs[i] <= 0.0) {
      throw Error(Errc::invalid_model,
                  "Schmidt coefficient " + std::to_string(i) + " is not positive");
    }
    if (i > 0 && coeffs[i] > coeffs[i - 1] + tol::kSchmidt) {
      throw Error(Errc::invalid_model, "Schmidt coefficients must be non-increasing");
    }
    norm2 += coeffs[i] * coeffs[i];
  }
  if (std::abs(norm2 - 1.0) > tol::kSchmidt) {
    throw Error(Errc::invalid_model, "Schmidt coefficients have squared norm " +
                                         std::to_string(norm2) + ", expected 1");
  }
  SchmidtState s;
  const std::size_t d = coeffs.size();
  std::vector<cplx> psi(d * d);
  for (std::size_t i = 0; i < d; ++i) psi[i * d + i] = coeffs[i];
  s.rho = ComplexMatrix::projector(psi);
  s.params = entanglement_params(coeffs);
  s.coeffs = std::move(coeffs);
  return s;
}

ComplexMatrix family_observable(double angle, std::size_t dim) {
  if (dim < 2) throw Error(Errc::domain, "family_observable: dimension must be >= 2");
  ComplexMatrix m(dim, dim);
  const double c = std::cos(angle), s = std::sin(angle);
  for (std::size_t k = 0; k + 1 < dim; k += 2) {
    m(k, k) = c;
    m(k, k + 1) = s;
    m(k + 1, k) = s;
    m(k + 1, k + 1) = -c;
  }
  if (dim % 2 == 1) m(dim - 1, dim - 1) = 1.0;
  return m;
}

Povm family_povm(double angle, std::size_t dim) {
  return povm_from_observable(family_observable(angle, dim));
}

double family_correlator(const EntanglementParams& params, double theta, double phi) {
  return (1.0 - params.gamma) * std::cos(theta) * std::cos(phi) +
         params.lambda * std::sin(theta) * std::sin(phi) + params.gamma;
}

QuantumInstrumentModel family_model(const SchmidtState& state, std::array<double, 2> theta,
                                    std::array<double, 2> phi) {
  const std::size_t d = state.rank();
  QuantumInstrumentModel m;
  m.dim_a = d;
  m.dim_b = d;
  m.rho = state.rho;
  for (int i = 0; i < 2; ++i) {
    m.alice[i] = family_povm(theta[i], d);
    m.bob[i] = family_povm(phi[i], d);
  }
  return m;
}

GuaranteedViolation guaranteed_violation(const SchmidtState& state) {
  if (state.rank() < 2 || state.params.lambda <= 0.0) {
    throw Error(Errc::domain, "guaranteed_violation: state must have two non-zero Schmidt coefficients");
  }
  const double lambda = state.params.lambda;
  GuaranteedViolation out;
  out.theta1 = kPi / 2.0 + std::atan(1.0 / lambda);
  out.model = family_model(state, {0.0, out.theta1}, {0.0, kPi / 2.0});
  out.violation = cace_primary_bound(behavior(out.model)) - qace(out.model);
  out.formula = (std::sqrt(1.0 + lambda * lambda) - 1.0) / 4.0;
  return out;
}

InstrumentalBehavior xz_behavior(const XzAngles& g) {
  const double c2 = std::cos(2.0 * g.alpha), s2 = std::sin(2.0 * g.alpha);
  InstrumentalBehavior beh;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      const double t = g.theta[x], f = g.phi[a];
      const double ma = std::cos(t) * c2;
      const double mb = std::cos(f) * c2;
      const double e = std::cos(t) * std::cos(f) + s2 * std::sin(t) * std::sin(f);
      const double sa = a == 0 ? 1.0 : -1.0;
      for (int b = 0; b < 2; ++b) {
        const double sb = b == 0 ? 1.0 : -1.0;
        beh(a, b, x) = 0.25 * (1.0 + sa * ma + sb * mb + sa * sb * e);
      }
    }
  return beh;
}

DoTable xz_do_table(const XzAngles& g) {
  const double c2 = std::cos(2.0 * g.alpha);
  DoTable t;
  for (int a = 0; a < 2; ++a) {
    t(0, a) = 0.5 * (1.0 + std::cos(g.phi[a]) * c2);
    t(1, a) = 0.5 * (1.0 - std::cos(g.phi[a]) * c2);
  }
  return t;
}

QuantumInstrumentModel xz_model(const XzAngles& g) {
  QuantumInstrumentModel m;
  const std::vector<cplx> psi{std::cos(g.alpha), 0.0, 0.0, std::sin(g.alpha)};
  m.rho = ComplexMatrix::projector(psi);
  for (int i = 0; i < 2; ++i) {
    m.alice[i] = bloch_povm(xz_direction(g.theta[i]));
    m.bob[i] = bloch_povm(xz_direction(g.phi[i]));
  }
  return m;
}

double xz_violation(const XzAngles& angles) {
  return classical_max(xz_behavior(angles)) - ace(xz_do_table(angles));
}

double family_theta0(double alpha, double phi0) {
  return std::atan2(std::sin(2.0 * alpha) * std::sin(phi0),
                    std::cos(2.0 * alpha) + 3.0 * std::cos(phi0));
}

double restricted_violation(double alpha, double phi0) {
  const double c2 = std::cos(2.0 * alpha), s2 = std::sin(2.0 * alpha);
  const double a = c2 + 3.0 * std::cos(phi0);
  const double b = s2 * std::sin(phi0);
  return 0.25 * (-3.0 - std::cos(phi0) * c2 + 2.0 * s2 * std::sin(phi0) + std::hypot(a, b));
}

OptimalTwoQubit optimal_two_qubit() {
  const double k = 3.0 * std::sqrt(2.0) + 2.0;
  OptimalTwoQubit out;
  out.alpha = 0.5 * (std::atan(1.0 / std::sqrt(k)) + std::atan(std::sqrt(k / 2.0)));
  out.phi0 = std::atan(2.0 / std::sqrt(k));
  out.theta0 = family_theta0(out.alpha, out.phi0);
  out.angles = {out.alpha, {out.theta0, -kPi / 2.0}, {out.phi0, -out.phi0}};
  out.model = xz_model(out.angles);
  out.behavior = behavior(out.model);
  out.qace = qace(out.model);
  out.violation = classical_max(out.behavior) - out.qace;
  return out;
}

CurvePoint v_alpha(double alpha) {
  const auto r = brent_max([alpha](double phi0) { return restricted_violation(alpha, phi0); },
                           0.0, kPi / 2.0, 1e-10);
  const double phi0 = r.argmax[0];
  return {alpha, r.value, {phi0, family_theta0(alpha, phi0)}};
}

CurvePoint v_phi(double phi) {
  const ObjectiveN f = [phi](std::span<const double> p) {
    return xz_violation({p[0], {p[1], p[2]}, {phi, -phi}});
  };
  Rng rng(kVPhiSeed);
  std::vector<std::vector<double>> starts;
  for (int i = 0; i < kStarts; ++i)
    starts.push_back({rng.uniform(0.0, kPi / 2.0), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)});
  const auto r = multi_start_max(f, starts, {0.3}, 1e-13);
  return {phi, r.value, r.argmax};
}

OptResult v_phi_maximum(int steps, int refine_rounds, const BatchEvaluator& evaluate) {
  const ObjectiveN f = [](std::span<const double> p) { return v_phi(p[0]).violation; };
  return grid_refine(f, {{0.0, kPi / 2.0}}, steps, refine_rounds, evaluate);
}

CurvePoint v_alpha_full(double alpha) {
  const ObjectiveN f = [alpha](std::span<const double> p) {
    return xz_violation({alpha, {p[0], p[1]}, {p[2], p[3]}});
  };
  const auto restricted = v_alpha(alpha);
  std::vector<std::vector<double>> starts{
      {restricted.argmax[1], -kPi / 2.0, restricted.argmax[0], -restricted.argmax[0]}};
  Rng rng(kFullAlphaSeed);
  for (int i = 1; i < kStarts; ++i) {
    starts.push_back({rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                      rng.uniform(-kPi, kPi)});
  }
  const auto r = multi_start_max(f, starts, {0.3}, 1e-13);
  return {alpha, r.value, r.argmax};
}

double witness_value(const BlochVector& n0, const BlochVector& n1) {
  return ((n0 * 2.0 + n1).norm() + (n0 - n1).norm() - 3.0) / 4.0;
}

double witness_of_overlap(double c, double r) {
  const double u = std::max(0.0, 5.0 + 4.0 * c);
  const double v = std::max(0.0, 2.0 - 2.0 * c);
  return (r * (std::sqrt(u) + std::sqrt(v)) - 3.0) / 4.0;
}

WitnessResult incompatibility_witness(const BlochVector& n0, const BlochVector& n1) {
  WitnessResult out;
  auto& m = out.model;
  m.rho = maximally_entangled(2);
  m.bob = {bloch_povm(n0), bloch_povm(n1)};
  const auto& n00 = m.bob[0][0];
  const auto& n10 = m.bob[1][0];
  const auto id = ComplexMatrix::identity(2);
  const ComplexMatrix ops[2] = {n00 * 2.0 + n10, n10 - n00};
  for (int x = 0; x < 2; ++x) {
    const auto e = eig2_hermitian(ops[x]);
    const auto p = ComplexMatrix::projector(e.vectors[0]).transpose();
    m.alice[x] = {p, id - p};
  }
  out.witness = witness_value(n0, n1);
  out.model_violation = cace_primary_bound(behavior(m)) - qace(m);
  return out;
}

OptResult max_witness_over_overlap(double r) {
  return brent_max([r](double c) { return witness_of_overlap(c, r); }, -1.0, 1.0, 1e-12);
}

double noisy_incompatibility_threshold() {
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (max_witness_over_overlap(mid).value > 0.0) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

InstrumentalBehavior isotropic_behavior(double noise, const std::array<double, 4>& t) {
  const auto pure = xz_behavior({kPi / 4.0, {t[0], t[1]}, {t[2], t[3]}});
  InstrumentalBehavior beh;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x) beh(a, b, x) = (1.0 - noise) * pure(a, b, x) + noise / 4.0;
  return beh;
}

CurvePoint isotropic_violation(double noise) {
  const ObjectiveN f = [noise](std::span<const double> p) {
    const std::array<double, 4> t{p[0], p[1], p[2], p[3]};
    const auto pure_do = xz_do_table({kPi / 4.0, {t[0], t[1]}, {t[2], t[3]}});
    DoTable table;
    for (int b = 0; b < 2; ++b)
      for (int a = 0; a < 2; ++a) table(b, a) = (1.0 - noise) * pure_do(b, a) + noise / 2.0;
    return classical_max(isotropic_behavior(noise, t)) - ace(table);
  };
  Rng rng(kIsotropicSeed);
  std::vector<std::vector<double>> starts;
  for (int i = 0; i < kStarts; ++i) {
    starts.push_back({rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                      rng.uniform(-kPi, kPi)});
  }
  const auto r = multi_start_max(f, starts, {0.3}, 1e-13);
  return {noise, r.value, r.argmax};
}

double isotropic_threshold(double lo, double hi, double tol) {
  if (!(lo < hi)) throw Error(Errc::domain, "isotropic_threshold: requires lo < hi");
  if (!(isotropic_violation(lo).violation > tol::kPositive)) {
    throw Error(Errc::domain, "isotropic_threshold: no violation at the lower end of the bracket");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (isotropic_violation(mid).violation > tol::kPositive) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qcause

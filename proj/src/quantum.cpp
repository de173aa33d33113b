#include "qcause/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcause/error.hpp"
#include "qcause/tolerances.hpp"

namespace qcause {

double BlochVector::norm() const { return std::sqrt(dot(*this)); }

double BlochVector::dot(const BlochVector& o) const {
  return n[0] * o.n[0] + n[1] * o.n[1] + n[2] * o.n[2];
}

BlochVector BlochVector::operator+(const BlochVector& o) const {
  return {{n[0] + o.n[0], n[1] + o.n[1], n[2] + o.n[2]}};
}

BlochVector BlochVector::operator-(const BlochVector& o) const {
  return {{n[0] - o.n[0], n[1] - o.n[1], n[2] - o.n[2]}};
}

BlochVector BlochVector::operator*(double s) const {
  return {{n[0] * s, n[1] * s, n[2] * s}};
}

ComplexMatrix bloch_operator(const BlochVector& v) {
  return pauli::x() * v.n[0] + pauli::y() * v.n[1] + pauli::z() * v.n[2];
}

Povm bloch_povm(const BlochVector& v) {
  if (v.norm() > 1.0 + tol::kBloch) {
    throw Error(Errc::invalid_model, "Bloch vector longer than 1");
  }
  const auto id = ComplexMatrix::identity(2);
  const auto s = bloch_operator(v);
  return {(id + s) * 0.5, (id - s) * 0.5};
}

BlochVector xz_direction(double angle) { return {{std::sin(angle), 0.0, std::cos(angle)}}; }

ComplexMatrix observable(const Povm& povm) { return povm[0] - povm[1]; }

Povm povm_from_observable(const ComplexMatrix& obs) {
  const auto id = ComplexMatrix::identity(obs.rows());
  return {(id + obs) * 0.5, (id - obs) * 0.5};
}

void validate_povm(const Povm& povm, std::size_t dim) {
  for (int k = 0; k < 2; ++k) {
    const auto& e = povm[k];
    if (!e.is_square() || e.rows() != dim) {
      throw Error(Errc::invalid_model, "POVM effect has wrong dimension");
    }
    if (!e.all_finite()) throw Error(Errc::non_finite, "POVM effect not finite");
    const auto report = check_density(e);
    if (!report.is_hermitian) throw Error(Errc::invalid_model, "POVM effect not Hermitian");
    if (!report.is_psd) {
      throw Error(Errc::invalid_model, "POVM effect has negative eigenvalue " +
                                           std::to_string(report.min_eigenvalue));
    }
  }
  if ((povm[0] + povm[1]).max_abs_diff(ComplexMatrix::identity(dim)) > tol::kOperator) {
    throw Error(Errc::invalid_model, "POVM effects do not sum to identity");
  }
}

void validate(const QuantumInstrumentModel& model) {
  const std::size_t n = model.dim_a * model.dim_b;
  if (!model.rho.is_square() || model.rho.rows() != n) {
    throw Error(Errc::invalid_model, "state dimension does not match dim_a*dim_b");
  }
  if (!model.rho.all_finite()) throw Error(Errc::non_finite, "state not finite");
  const auto report = check_density(model.rho);
  if (!report.is_hermitian) throw Error(Errc::invalid_model, "state not Hermitian");
  if (!report.is_psd) {
    throw Error(Errc::invalid_model,
                "state not PSD, min eigenvalue " + std::to_string(report.min_eigenvalue));
  }
  if (std::abs(report.trace - 1.0) > tol::kProbability) {
    throw Error(Errc::invalid_model, "state trace " + std::to_string(report.trace));
  }
  for (const auto& povm : model.alice) validate_povm(povm, model.dim_a);
  for (const auto& povm : model.bob) validate_povm(povm, model.dim_b);
}

InstrumentalBehavior behavior(const QuantumInstrumentModel& model) {
  InstrumentalBehavior beh;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        beh(a, b, x) = expectation(tensor(model.alice[x][a], model.bob[a][b]), model.rho);
  return beh;
}

DoTable do_table(const QuantumInstrumentModel& model) {
  const auto rho_b = partial_trace(model.rho, model.dim_a, model.dim_b, Subsystem::b);
  DoTable table;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) table(b, a) = expectation(model.bob[a][b], rho_b);
  return table;
}

double qace(const QuantumInstrumentModel& model) { return ace(do_table(model)); }

BellBehavior bell_behavior(const QuantumInstrumentModel& model) {
  BellBehavior bell;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          bell(a, b, x, y) =
              expectation(tensor(model.alice[x][a], model.bob[y][b]), model.rho);
  return bell;
}

std::vector<cplx> random_pure_state(std::size_t dim, Rng& rng) {
  std::vector<cplx> v(dim);
  double norm2 = 0.0;
  for (auto& c : v) {
    const double re = rng.normal();
    const double im = rng.normal();
    c = {re, im};
    norm2 += re * re + im * im;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : v) c *= inv;
  return v;
}

BlochVector random_bloch_direction(Rng& rng) {
  BlochVector v{{rng.normal(), rng.normal(), rng.normal()}};
  return v * (1.0 / v.norm());
}

ComplexMatrix separable_sample(std::size_t dim_a, std::size_t dim_b,
                               std::size_t k_terms, Rng& rng) {
  if (k_terms == 0) throw Error(Errc::domain, "separable_sample: k_terms must be >= 1");
  std::vector<double> weights;
  std::vector<ComplexMatrix> terms;
  double total = 0.0;
  for (std::size_t k = 0; k < k_terms; ++k) {
    const double w = rng.exponential();
    const auto psi_a = random_pure_state(dim_a, rng);
    const auto psi_b = random_pure_state(dim_b, rng);
    weights.push_back(w);
    total += w;
    terms.push_back(tensor(ComplexMatrix::projector(psi_a), ComplexMatrix::projector(psi_b)));
  }
  ComplexMatrix rho(dim_a * dim_b, dim_a * dim_b);
  for (std::size_t k = 0; k < k_terms; ++k) rho += terms[k] * (weights[k] / total);
  return rho;
}

ComplexMatrix separable_sample(std::size_t dim_a, std::size_t dim_b,
                               std::size_t k_terms, std::uint64_t seed) {
  Rng rng(seed);
  return separable_sample(dim_a, dim_b, k_terms, rng);
}

Povm random_projective_qubit(Rng& rng) { return bloch_povm(random_bloch_direction(rng)); }

Povm random_projective_qubit(std::uint64_t seed) {
  Rng rng(seed);
  return random_projective_qubit(rng);
}

std::array<Povm, 2> compatible_bob_from_parent(const std::vector<ComplexMatrix>& parent,
                                               const PostProcessing& post) {
  if (parent.empty()) throw Error(Errc::invalid_model, "parent POVM has no effects");
  if (post.size() != parent.size()) {
    throw Error(Errc::invalid_model, "post-processing size differs from parent POVM");
  }
  const std::size_t dim = parent.front().rows();
  ComplexMatrix sum(dim, dim);
  for (const auto& g : parent) {
    if (!g.is_square() || g.rows() != dim) {
      throw Error(Errc::invalid_model, "parent effects differ in dimension");
    }
    if (!check_density(g).is_psd) throw Error(Errc::invalid_model, "parent effect not PSD");
    sum += g;
  }
  if (sum.max_abs_diff(ComplexMatrix::identity(dim)) > tol::kOperator) {
    throw Error(Errc::invalid_model, "parent effects do not sum to identity");
  }
  for (const auto& d : post)
    for (int a = 0; a < 2; ++a) {
      if (d[a][0] < 0.0 || d[a][1] < 0.0 ||
          std::abs(d[a][0] + d[a][1] - 1.0) > tol::kProbability) {
        throw Error(Errc::invalid_probability, "post-processing d(b|a,l) is not a distribution");
      }
    }
  std::array<Povm, 2> bob{Povm{ComplexMatrix(dim, dim), ComplexMatrix(dim, dim)},
                          Povm{ComplexMatrix(dim, dim), ComplexMatrix(dim, dim)}};
  for (std::size_t l = 0; l < parent.size(); ++l)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) bob[a][b] += parent[l] * post[l][a][b];
  return bob;
}

ComplexMatrix maximally_entangled(std::size_t dim) {
  std::vector<cplx> psi(dim * dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t i = 0; i < dim; ++i) psi[i * dim + i] = amp;
  return ComplexMatrix::projector(psi);
}

ComplexMatrix isotropic_state(double noise) {
  return maximally_entangled(2) * (1.0 - noise) + ComplexMatrix::identity(4) * (noise / 4.0);
}

}  // namespace qcause

#include "qcause/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcause/error.hpp"
#include "qcause/tolerances.hpp"

namespace qcause {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(Errc::dimension_mismatch,
                "matrix entries: expected " + std::to_string(rows_ * cols_) +
                    ", got " + std::to_string(data_.size()));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw Error(Errc::dimension_mismatch, "ragged matrix initializer");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const cplx> v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(Errc::dimension_mismatch, "max_abs_diff: shapes differ");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i)
    worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw Error(Errc::dimension_mismatch, "matrix addition: shapes differ");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw Error(Errc::dimension_mismatch, "matrix subtraction: shapes differ");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(Errc::dimension_mismatch, "matrix product: inner dimensions differ");
  }
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

namespace pauli {
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cplx s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a,
                            std::size_t dim_b, Subsystem keep) {
  const std::size_t n = dim_a * dim_b;
  if (!m.is_square() || m.rows() != n) {
    throw Error(Errc::dimension_mismatch,
                "partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected " + std::to_string(n) +
                    "x" + std::to_string(n));
  }
  if (keep == Subsystem::b) {
    ComplexMatrix out(dim_b, dim_b);
    for (std::size_t i = 0; i < dim_b; ++i)
      for (std::size_t j = 0; j < dim_b; ++j)
        for (std::size_t k = 0; k < dim_a; ++k)
          out(i, j) += m(k * dim_b + i, k * dim_b + j);
    return out;
  }
  ComplexMatrix out(dim_a, dim_a);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j)
      for (std::size_t k = 0; k < dim_b; ++k)
        out(i, j) += m(i * dim_b + k, j * dim_b + k);
  return out;
}

double expectation(const ComplexMatrix& op, const ComplexMatrix& state) {
  if (!op.is_square() || !state.is_square() || op.rows() != state.rows()) {
    throw Error(Errc::dimension_mismatch, "expectation: operator and state differ in shape");
  }
  const std::size_t n = op.rows();
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t += op(i, j) * state(j, i);
  if (std::abs(t.imag()) > tol::kImaginary) {
    throw Error(Errc::not_hermitian,
                "expectation: imaginary residue " + std::to_string(t.imag()));
  }
  return t.real();
}

namespace {

bool hermitian_within(const ComplexMatrix& m, double tolerance) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tolerance) return false;
  return true;
}

std::array<cplx, 2> normalized(cplx a, cplx b) {
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

}  // namespace

Eig2 eig2_hermitian(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) {
    throw Error(Errc::dimension_mismatch, "eig2_hermitian: expected a 2x2 matrix");
  }
  if (!hermitian_within(m, tol::kOperator)) {
    throw Error(Errc::not_hermitian, "eig2_hermitian: input is not Hermitian");
  }
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const cplx b = m(0, 1);
  const double mean = 0.5 * (a + d);
  const double half_gap = 0.5 * (a - d);
  const double r = std::hypot(half_gap, std::abs(b));

  Eig2 out{};
  out.values = {mean + r, mean - r};
  if (std::abs(b) <= 1e-300) {
    // Already diagonal.
    if (a >= d) {
      out.vectors = {{{1.0, 0.0}, {0.0, 1.0}}};
    } else {
      out.vectors = {{{0.0, 1.0}, {1.0, 0.0}}};
    }
    return out;
  }
  for (int k = 0; k < 2; ++k) {
    const double lambda = out.values[k];
    // Two null-vector candidates of (m - lambda); keep the better conditioned.
    const cplx u0 = b, u1 = lambda - a;
    const cplx w0 = lambda - d, w1 = std::conj(b);
    if (std::norm(u0) + std::norm(u1) >= std::norm(w0) + std::norm(w1)) {
      out.vectors[k] = normalized(u0, u1);
    } else {
      out.vectors[k] = normalized(w0, w1);
    }
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw Error(Errc::dimension_mismatch, "hermitian_eigenvalues: matrix not square");
  }
  const std::size_t n = m.rows();
  if (n > 64) {
    throw Error(Errc::dimension_mismatch, "hermitian_eigenvalues: dimension above 64");
  }
  // Real embedding [[Re, -Im], [Im, Re]] has each eigenvalue twice.
  const std::size_t N = 2 * n;
  std::vector<double> s(N * N);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return s[r * N + c]; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // symmetrize to suppress rounding asymmetry
      const cplx h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      at(i, j) = h.real();
      at(i + n, j + n) = h.real();
      at(i, j + n) = -h.imag();
      at(i + n, j) = h.imag();
    }

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off += at(p, q) * at(p, q);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - sn * akq;
          at(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - sn * aqk;
          at(q, k) = sn * apk + c * aqk;
        }
      }
  }
  std::vector<double> diag(N);
  for (std::size_t i = 0; i < N; ++i) diag[i] = at(i, i);
  std::sort(diag.begin(), diag.end());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (diag[2 * i] + diag[2 * i + 1]);
  return out;
}

HermitianCheckReport check_density(const ComplexMatrix& m) {
  HermitianCheckReport report;
  if (!m.is_square()) {
    throw Error(Errc::dimension_mismatch, "check_density: matrix not square");
  }
  report.trace = m.trace().real();
  report.is_hermitian = hermitian_within(m, tol::kOperator);
  if (!report.is_hermitian) return report;
  const auto eigs = hermitian_eigenvalues(m);
  report.min_eigenvalue = eigs.empty() ? 0.0 : eigs.front();
  report.is_psd = report.min_eigenvalue >= -tol::kPsd;
  return report;
}

}  // namespace qcause

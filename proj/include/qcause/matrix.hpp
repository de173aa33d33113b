#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qcause {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Sized for density matrices and effects of
/// local dimension up to about 8, i.e. at most 64x64.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  /// Row-wise nested initializer, e.g. {{1, 0}, {0, -1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const double> diag);
  /// |v><v|
  static ComplexMatrix projector(std::span<const cplx> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::span<const cplx> entries() const noexcept { return data_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  cplx trace() const;
  bool all_finite() const;
  /// Largest entrywise modulus of (this - other).
  double max_abs_diff(const ComplexMatrix& other) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

/// Kronecker product a (x) b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { a = 0, b = 1 };

/// Reduced matrix on `keep` of an operator on C^dA (x) C^dB.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a,
                            std::size_t dim_b, Subsystem keep);

/// Tr[op * state] for Hermitian op and a density matrix. Throws if the
/// imaginary part is not negligible.
double expectation(const ComplexMatrix& op, const ComplexMatrix& state);

struct Eig2 {
  std::array<double, 2> values;                      // descending
  std::array<std::array<cplx, 2>, 2> vectors;        // unit, vectors[i] <-> values[i]
};

/// Closed-form eigendecomposition of a 2x2 Hermitian matrix.
Eig2 eig2_hermitian(const ComplexMatrix& m);

/// Eigenvalues (ascending) of a Hermitian matrix via cyclic Jacobi on its real
/// symmetric embedding. Dimension at most 64.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

struct HermitianCheckReport {
  bool is_hermitian = false;
  bool is_psd = false;
  double trace = 0.0;
  double min_eigenvalue = 0.0;
};

HermitianCheckReport check_density(const ComplexMatrix& m);

}  // namespace qcause

#pragma once

// Dense complex linear algebra with tensor-leg bookkeeping.
//
// Everything here works on small dense matrices (at most 64x64 in practice),
// stored row-major. Multipartite operators carry an ordered list of subsystem
// dimensions ("legs"); leg 0 is the most significant index of the Kronecker
// product.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qdiss/errors.hpp"

namespace qdiss::qla {

using Complex = std::complex<double>;
using Legs = std::vector<std::size_t>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const double> values);
  // |a><b| for column vectors a, b.
  static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  Complex trace() const;
  std::vector<Complex> column(std::size_t c) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// Real dense matrix, row-major. Used for correlation matrices and SVD factors.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static RealMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> entries() const { return data_; }

  RealMatrix transpose() const;
  friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const RealMatrix& a, const RealMatrix& b);
double max_abs(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);
// max |m_ij - conj(m_ji)|; infinity for non-square input.
double hermiticity_error(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
double norm(std::span<const Complex> v);

std::size_t leg_product(const Legs& legs);

/// A Hermitian, unit-trace, positive semidefinite matrix with a leg structure.
///
/// The constructor validates every invariant (Hermitian and unit trace within
/// 1e-12, eigenvalues >= -1e-10) and throws DomainError otherwise.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPsdTol = 1e-10;

  DensityMatrix(ComplexMatrix matrix, Legs legs);

  const ComplexMatrix& matrix() const { return matrix_; }
  const Legs& legs() const { return legs_; }
  std::size_t dim() const { return matrix_.rows(); }

  // Tr(rho^2)
  double purity() const;

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix matrix, Legs legs, Unchecked);

  ComplexMatrix matrix_;
  Legs legs_;

  // Operations that provably preserve the invariants skip re-validation.
  friend DensityMatrix tensor(const DensityMatrix&, const DensityMatrix&);
  friend DensityMatrix permute_legs(const DensityMatrix&, std::span<const std::size_t>);
  friend DensityMatrix partial_trace(const DensityMatrix&, std::span<const std::size_t>);
};

/// Complex amplitudes with leg structure. Intermediate vectors that are not
/// meant to be unit-norm are constructed with `normalized = false`.
class PureState {
 public:
  static constexpr double kNormTol = 1e-12;

  PureState(std::vector<Complex> amplitudes, Legs legs, bool normalized = true);

  std::span<const Complex> amplitudes() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  const Legs& legs() const { return legs_; }
  std::size_t dim() const { return amps_.size(); }
  bool normalized() const { return normalized_; }

  double norm() const { return qla::norm(amps_); }
  // Returns a unit-norm copy; throws DomainError for a zero vector.
  PureState normalize() const;
  PureState scaled(Complex s) const;
  // |psi><psi|; requires a normalized state.
  DensityMatrix density() const;
  ComplexMatrix projector() const;

 private:
  std::vector<Complex> amps_;
  Legs legs_;
  bool normalized_;
};

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor(const PureState& a, const PureState& b);

// Reorders the legs of an operator: leg i of the result is leg perm[i] of the
// input. Applied to both row and column indices.
ComplexMatrix permute_legs(const ComplexMatrix& m, const Legs& legs, std::span<const std::size_t> perm);
DensityMatrix permute_legs(const DensityMatrix& rho, std::span<const std::size_t> perm);
Legs permuted(const Legs& legs, std::span<const std::size_t> perm);

// Traces out the listed legs. The remaining legs keep their relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const Legs& legs, std::span<const std::size_t> discard);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> discard);

// Partial transpose of the listed legs.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const Legs& legs, std::span<const std::size_t> legs_to_transpose);

// Lifts `op`, acting on `targets` (in that order), to the full space described
// by `legs`, acting as identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, const Legs& legs, std::span<const std::size_t> targets);

// Merges consecutive legs into two groups: [0, split) and [split, n).
DensityMatrix bipartition(const DensityMatrix& rho, std::size_t split);

struct EigenSystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // eigenvectors as columns
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Sweeps until the off-diagonal Frobenius norm drops below 1e-12 (scaled by
/// the matrix norm when that exceeds one), at most 100 sweeps. Throws
/// DomainError if the input deviates from Hermitian by more than 1e-10.
EigenSystem hermitian_eig(const ComplexMatrix& m);
std::vector<double> eigenvalues(const ComplexMatrix& m);

inline constexpr double kPsdClip = 1e-10;

// Square root of a Hermitian PSD matrix. Eigenvalues in [-1e-10, 0) are
// clipped to zero; anything more negative throws DomainError.
ComplexMatrix matrix_sqrt(const ComplexMatrix& m);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

struct RealSvd {
  RealMatrix u;                 // rows x rows, orthogonal
  std::vector<double> singular;  // descending, length min(rows, cols)
  RealMatrix v;                 // cols x cols, orthogonal
};

// m = U diag(s) V^T. V comes from the eigenvectors of m^T m, singular values
// as |m v_k|, and the left vectors from m v_k / s_k; left vectors for zero
// singular values are completed from the eigenvectors of m m^T.
RealSvd svd_real(const RealMatrix& m);

}  // namespace qdiss::qla

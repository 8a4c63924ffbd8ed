#include "qdiss/qla.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace qdiss::qla {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError(std::string(what) + ": dimension mismatch");
  }
}

std::vector<std::size_t> strides_of(const Legs& legs) {
  std::vector<std::size_t> strides(legs.size(), 1);
  for (std::size_t k = legs.size(); k-- > 1;) strides[k - 1] = strides[k] * legs[k];
  return strides;
}

// Offsets contributed by the digits of `subset` legs, enumerated in row-major
// order over those legs.
std::vector<std::size_t> subset_offsets(const Legs& legs, std::span<const std::size_t> subset) {
  const auto strides = strides_of(legs);
  std::vector<std::size_t> offsets{0};
  for (std::size_t leg : subset) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * legs[leg]);
    for (std::size_t base : offsets) {
      for (std::size_t digit = 0; digit < legs[leg]; ++digit) next.push_back(base + digit * strides[leg]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> subset) {
  std::vector<bool> in(n, false);
  for (std::size_t s : subset) {
    if (s >= n) throw DomainError("leg index " + std::to_string(s) + " out of range");
    if (in[s]) throw DomainError("leg index " + std::to_string(s) + " listed twice");
    in[s] = true;
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in[i]) rest.push_back(i);
  }
  return rest;
}

void check_legs(const ComplexMatrix& m, const Legs& legs) {
  if (!m.is_square() || leg_product(legs) != m.rows()) {
    throw DomainError("leg dimensions do not match the matrix size");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw DomainError("entry count does not match rows x cols");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DomainError("ragged matrix initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out = *this;
  for (auto& x : out.data_) x = std::conj(x);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

std::vector<Complex> ComplexMatrix::column(std::size_t c) const {
  std::vector<Complex> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "matrix addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "matrix subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product: inner dimension mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw DomainError("matrix-vector product: dimension mismatch");
  std::vector<Complex> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  }
  return out;
}

// ---------------------------------------------------------------------------
// RealMatrix

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::transpose() const {
  RealMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product: inner dimension mismatch");
  RealMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// norms and predicates

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

double max_abs(const ComplexMatrix& m) {
  double r = 0.0;
  for (const auto& x : m.entries()) r = std::max(r, std::abs(x));
  return r;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& x : m.entries()) s += std::norm(x);
  return std::sqrt(s);
}

double hermiticity_error(const ComplexMatrix& m) {
  if (!m.is_square()) return std::numeric_limits<double>::infinity();
  double e = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) e = std::max(e, std::abs(m(i, j) - std::conj(m(j, i))));
  }
  return e;
}

bool all_finite(const ComplexMatrix& m) {
  return std::all_of(m.entries().begin(), m.entries().end(),
                     [](const Complex& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DomainError("inner product: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

std::size_t leg_product(const Legs& legs) {
  return std::accumulate(legs.begin(), legs.end(), std::size_t{1}, std::multiplies<>());
}

// ---------------------------------------------------------------------------
// DensityMatrix / PureState

DensityMatrix::DensityMatrix(ComplexMatrix matrix, Legs legs) : matrix_(std::move(matrix)), legs_(std::move(legs)) {
  check_legs(matrix_, legs_);
  if (!all_finite(matrix_)) throw DomainError("density matrix has non-finite entries");
  const double herm = hermiticity_error(matrix_);
  if (herm > kHermitianTol) throw DomainError("density matrix is not Hermitian (error " + std::to_string(herm) + ")");
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) throw DomainError("density matrix trace " + std::to_string(tr.real()) + " != 1");
  const auto ev = eigenvalues(matrix_);
  if (ev.back() < -kPsdTol) throw DomainError("density matrix is not positive semidefinite (eigenvalue " + std::to_string(ev.back()) + ")");
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, Legs legs, Unchecked)
    : matrix_(std::move(matrix)), legs_(std::move(legs)) {}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

PureState::PureState(std::vector<Complex> amplitudes, Legs legs, bool normalized)
    : amps_(std::move(amplitudes)), legs_(std::move(legs)), normalized_(normalized) {
  if (leg_product(legs_) != amps_.size()) throw DomainError("leg dimensions do not match the vector size");
  if (normalized_ && std::abs(qla::norm(amps_) - 1.0) > kNormTol) {
    throw DomainError("state vector is not normalized (norm " + std::to_string(qla::norm(amps_)) + ")");
  }
}

PureState PureState::normalize() const {
  const double n = norm();
  if (n == 0.0) throw DomainError("cannot normalize a zero vector");
  auto v = amps_;
  for (auto& x : v) x /= n;
  return {std::move(v), legs_, true};
}

PureState PureState::scaled(Complex s) const {
  auto v = amps_;
  for (auto& x : v) x *= s;
  return {std::move(v), legs_, false};
}

ComplexMatrix PureState::projector() const { return ComplexMatrix::outer(amps_, amps_); }

DensityMatrix PureState::density() const {
  if (!normalized_) throw DomainError("density() requires a normalized state");
  return DensityMatrix(projector(), legs_);
}

// ---------------------------------------------------------------------------
// tensor structure

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Legs legs = a.legs();
  legs.insert(legs.end(), b.legs().begin(), b.legs().end());
  return {tensor(a.matrix(), b.matrix()), std::move(legs), DensityMatrix::Unchecked{}};
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<Complex> v(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) v[i * b.dim() + j] = a[i] * b[j];
  }
  Legs legs = a.legs();
  legs.insert(legs.end(), b.legs().begin(), b.legs().end());
  return {std::move(v), std::move(legs), a.normalized() && b.normalized()};
}

Legs permuted(const Legs& legs, std::span<const std::size_t> perm) {
  if (perm.size() != legs.size()) throw DomainError("permutation length does not match the number of legs");
  std::vector<bool> seen(legs.size(), false);
  Legs out(legs.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= legs.size() || seen[perm[i]]) throw DomainError("invalid leg permutation");
    seen[perm[i]] = true;
    out[i] = legs[perm[i]];
  }
  return out;
}

ComplexMatrix permute_legs(const ComplexMatrix& m, const Legs& legs, std::span<const std::size_t> perm) {
  check_legs(m, legs);
  permuted(legs, perm);  // validates
  // Enumerating the old-index offsets of the legs in the new order yields, for
  // each new index, the matching old index.
  const auto map = subset_offsets(legs, perm);
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = 0; j < map.size(); ++j) out(i, j) = m(map[i], map[j]);
  }
  return out;
}

DensityMatrix permute_legs(const DensityMatrix& rho, std::span<const std::size_t> perm) {
  return {permute_legs(rho.matrix(), rho.legs(), perm), permuted(rho.legs(), perm), DensityMatrix::Unchecked{}};
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const Legs& legs, std::span<const std::size_t> discard) {
  check_legs(m, legs);
  const auto keep = complement(legs.size(), discard);
  const auto keep_off = subset_offsets(legs, keep);
  const auto disc_off = subset_offsets(legs, discard);
  ComplexMatrix out(keep_off.size(), keep_off.size());
  for (std::size_t i = 0; i < keep_off.size(); ++i) {
    for (std::size_t j = 0; j < keep_off.size(); ++j) {
      Complex s = 0.0;
      for (std::size_t d : disc_off) s += m(keep_off[i] + d, keep_off[j] + d);
      out(i, j) = s;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> discard) {
  const auto keep = complement(rho.legs().size(), discard);
  if (keep.empty()) throw DomainError("partial_trace cannot discard every leg; use the full trace");
  Legs legs;
  for (std::size_t k : keep) legs.push_back(rho.legs()[k]);
  return {partial_trace(rho.matrix(), rho.legs(), discard), std::move(legs), DensityMatrix::Unchecked{}};
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const Legs& legs, std::span<const std::size_t> legs_to_transpose) {
  check_legs(m, legs);
  const auto rest = complement(legs.size(), legs_to_transpose);
  const auto t_off = subset_offsets(legs, legs_to_transpose);
  const auto o_off = subset_offsets(legs, rest);
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t rt : t_off) {
    for (std::size_t ro : o_off) {
      for (std::size_t ct : t_off) {
        for (std::size_t co : o_off) out(ro + ct, co + rt) = m(ro + rt, co + ct);
      }
    }
  }
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, const Legs& legs, std::span<const std::size_t> targets) {
  const auto rest = complement(legs.size(), targets);
  Legs target_legs;
  for (std::size_t t : targets) target_legs.push_back(legs[t]);
  if (!op.is_square() || op.rows() != leg_product(target_legs)) {
    throw DomainError("embed: operator size does not match the target legs");
  }
  Legs rest_legs;
  for (std::size_t r : rest) rest_legs.push_back(legs[r]);

  std::vector<std::size_t> order(targets.begin(), targets.end());
  order.insert(order.end(), rest.begin(), rest.end());
  Legs order_legs = target_legs;
  order_legs.insert(order_legs.end(), rest_legs.begin(), rest_legs.end());

  std::vector<std::size_t> back(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) back[order[p]] = p;
  return permute_legs(tensor(op, ComplexMatrix::identity(leg_product(rest_legs))), order_legs, back);
}

DensityMatrix bipartition(const DensityMatrix& rho, std::size_t split) {
  const auto& legs = rho.legs();
  if (split == 0 || split >= legs.size()) throw DomainError("bipartition split must leave legs on both sides");
  Legs a(legs.begin(), legs.begin() + static_cast<std::ptrdiff_t>(split));
  Legs b(legs.begin() + static_cast<std::ptrdiff_t>(split), legs.end());
  return DensityMatrix(rho.matrix(), Legs{leg_product(a), leg_product(b)});
}

// ---------------------------------------------------------------------------
// spectral routines

EigenSystem hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_square()) throw DomainError("hermitian_eig: matrix is not square");
  if (!all_finite(m)) throw DomainError("hermitian_eig: non-finite entries");
  const double herm = hermiticity_error(m);
  if (herm > 1e-10) throw DomainError("hermitian_eig: matrix is not Hermitian (error " + std::to_string(herm) + ")");

  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double tol = 1e-12 * std::max(1.0, frobenius_norm(a));

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) s += std::norm(a(i, j));
      }
    }
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() >= tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex ph_conj = std::conj(phase);

        // Rotation J = diag(1, conj(phase)) * [[c, s], [-s, c]] in the (p, q) plane.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * ph_conj * akq;
          a(k, q) = s * akp + c * ph_conj * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * ph_conj * vkq;
          v(k, q) = s * vkp + c * ph_conj * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> eigenvalues(const ComplexMatrix& m) { return hermitian_eig(m).values; }

ComplexMatrix matrix_sqrt(const ComplexMatrix& m) {
  const auto eig = hermitian_eig(m);
  std::vector<double> roots(eig.values.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const double lam = eig.values[k];
    if (lam < -kPsdClip) throw DomainError("matrix_sqrt: negative eigenvalue " + std::to_string(lam));
    roots[k] = std::sqrt(std::max(lam, 0.0));
  }
  return eig.vectors * ComplexMatrix::diagonal(roots) * eig.vectors.adjoint();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "trace_distance");
  double s = 0.0;
  for (double lam : eigenvalues(a - b)) s += std::abs(lam);
  return 0.5 * s;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("trace_distance: dimension mismatch");
  return trace_distance(a.matrix(), b.matrix());
}

namespace {

ComplexMatrix to_complex(const RealMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  }
  return out;
}

// Eigenvectors of a real symmetric matrix, rotated to be real.
std::vector<std::vector<double>> real_eigenvectors(const RealMatrix& sym) {
  const auto eig = hermitian_eig(to_complex(sym));
  const std::size_t n = sym.rows();
  std::vector<std::vector<double>> vecs(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t big = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(eig.vectors(r, k)) > std::abs(eig.vectors(big, k))) big = r;
    }
    const Complex phase = std::conj(eig.vectors(big, k)) / std::abs(eig.vectors(big, k));
    double nrm = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      vecs[k][r] = (eig.vectors(r, k) * phase).real();
      nrm += vecs[k][r] * vecs[k][r];
    }
    nrm = std::sqrt(nrm);
    for (double& x : vecs[k]) x /= nrm;
  }
  return vecs;
}

// Gram-Schmidt `cand` against `basis`; appends and returns true if it keeps a
// substantial component.
bool orthogonalize_into(std::vector<std::vector<double>>& basis, std::vector<double> cand) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      double d = 0.0;
      for (std::size_t i = 0; i < cand.size(); ++i) d += b[i] * cand[i];
      for (std::size_t i = 0; i < cand.size(); ++i) cand[i] -= d * b[i];
    }
  }
  double nrm = 0.0;
  for (double x : cand) nrm += x * x;
  nrm = std::sqrt(nrm);
  if (nrm < 1e-6) return false;
  for (double& x : cand) x /= nrm;
  basis.push_back(std::move(cand));
  return true;
}

}  // namespace

RealSvd svd_real(const RealMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const RealMatrix mt = m.transpose();

  auto right = real_eigenvectors(mt * m);
  std::vector<double> sigma(cols);
  std::vector<std::vector<double>> images(cols, std::vector<double>(rows, 0.0));
  for (std::size_t k = 0; k < cols; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      double x = 0.0;
      for (std::size_t j = 0; j < cols; ++j) x += m(i, j) * right[k][j];
      images[k][i] = x;
      s += x * x;
    }
    sigma[k] = std::sqrt(s);
  }

  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

  const std::size_t count = std::min(rows, cols);
  const double floor = 1e-10 * std::max(1.0, sigma[order.front()]);

  RealSvd out{RealMatrix(rows, rows), std::vector<double>(count), RealMatrix(cols, cols)};
  std::vector<std::vector<double>> left;
  for (std::size_t k = 0; k < cols; ++k) {
    const std::size_t src = order[k];
    for (std::size_t j = 0; j < cols; ++j) out.v(j, k) = right[src][j];
    if (k < count) out.singular[k] = sigma[src];
    if (k < count && sigma[src] > floor) {
      std::vector<double> u = images[src];
      for (double& x : u) x /= sigma[src];
      left.push_back(std::move(u));
    }
  }

  // Complete the left basis: null directions of m m^T first, then unit vectors.
  if (left.size() < rows) {
    auto lv = real_eigenvectors(m * mt);
    for (std::size_t k = lv.size(); k-- > 0 && left.size() < rows;) orthogonalize_into(left, lv[k]);
    for (std::size_t e = 0; e < rows && left.size() < rows; ++e) {
      std::vector<double> unit(rows, 0.0);
      unit[e] = 1.0;
      orthogonalize_into(left, std::move(unit));
    }
  }
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t i = 0; i < rows; ++i) out.u(i, k) = left[k][i];
  }
  return out;
}

}  // namespace qdiss::qla

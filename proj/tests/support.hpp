#pragma once

// Shared test helpers: seeded random states and Eigen-based oracles that do
// not go through the library's own eigensolver.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qdiss/qla.hpp"

namespace qdiss::test {

using qla::Complex;
using qla::ComplexMatrix;
using qla::DensityMatrix;
using EMat = Eigen::MatrixXcd;

inline EMat to_eigen(const ComplexMatrix& m) {
  EMat e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  }
  return e;
}

inline ComplexMatrix from_eigen(const EMat& e) {
  ComplexMatrix m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  }
  return m;
}

inline Eigen::VectorXd oracle_eigenvalues(const EMat& m) {
  Eigen::SelfAdjointEigenSolver<EMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double oracle_entropy(const EMat& m) {
  double s = 0.0;
  for (double l : oracle_eigenvalues(m)) {
    if (l > 1e-15) s -= l * std::log2(l);
  }
  return s;
}

// Two-qubit reduced states by explicit index sums.
inline EMat oracle_reduce_a(const EMat& r) {
  EMat a = EMat::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int b = 0; b < 2; ++b) a(i, j) += r(2 * i + b, 2 * j + b);
  return a;
}

inline EMat oracle_reduce_b(const EMat& r) {
  EMat b = EMat::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < 2; ++a) b(i, j) += r(2 * a + i, 2 * a + j);
  return b;
}

inline double oracle_trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  double s = 0.0;
  for (double l : oracle_eigenvalues(to_eigen(a - b))) s += std::abs(l);
  return 0.5 * s;
}

// Conditional entropy of B after measuring A (two qubits) along (theta, phi).
inline double oracle_conditional_entropy(const EMat& r, double theta, double phi) {
  const Complex e = std::polar(1.0, phi);
  const Eigen::Vector2cd v0(std::cos(theta / 2), e * std::sin(theta / 2));
  const Eigen::Vector2cd v1(std::sin(theta / 2), -e * std::cos(theta / 2));
  double s = 0.0;
  for (const auto& v : {v0, v1}) {
    EMat blk = EMat::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int a = 0; a < 2; ++a)
          for (int a2 = 0; a2 < 2; ++a2) blk(i, j) += std::conj(v(a)) * r(2 * a + i, 2 * a2 + j) * v(a2);
    const double p = blk.trace().real();
    if (p < 1e-14) continue;
    s += p * oracle_entropy(blk / p);
  }
  return s;
}

// Wootters concurrence from the non-Hermitian product rho * rho_tilde.
inline double oracle_concurrence(const ComplexMatrix& rho) {
  const EMat r = to_eigen(rho);
  EMat yy = EMat::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const EMat tilde = yy * r.conjugate() * yy;
  Eigen::ComplexEigenSolver<EMat> es(r * tilde);
  std::vector<double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline double oracle_negativity(const ComplexMatrix& rho) {
  EMat pt(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) pt(2 * a + b, 2 * a2 + b2) = rho(2 * a + b2, 2 * a2 + b);
  double s = 0.0;
  for (double l : oracle_eigenvalues(pt)) s += std::max(0.0, -l);
  return s;
}

inline double werner_discord_formula(double z) {
  auto xlog = [](double x) { return x > 0.0 ? x * std::log2(x) : 0.0; };
  return xlog(1.0 - z) / 4.0 + xlog(1.0 + 3.0 * z) / 4.0 - xlog(1.0 + z) / 2.0;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>()(gen_); }
  Complex gaussian_complex() { return {normal(), normal()}; }

  std::vector<Complex> random_vector(std::size_t d) {
    std::vector<Complex> v(d);
    for (auto& x : v) x = gaussian_complex();
    const double n = qla::norm(v);
    for (auto& x : v) x /= n;
    return v;
  }

  // Ginibre G G^dagger / Tr, optionally of reduced rank.
  ComplexMatrix random_density(std::size_t d, std::size_t rank = 0) {
    if (rank == 0) rank = d;
    EMat g(d, rank);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < rank; ++j) g(i, j) = gaussian_complex();
    EMat r = g * g.adjoint();
    r /= r.trace().real();
    ComplexMatrix m = from_eigen(r);
    // exact Hermitian symmetry
    ComplexMatrix h = m + m.adjoint();
    h *= 0.5;
    return h;
  }

  DensityMatrix random_state(const qla::Legs& legs, std::size_t rank = 0) {
    return DensityMatrix(random_density(qla::leg_product(legs), rank), legs);
  }

  ComplexMatrix random_hermitian(std::size_t d) {
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      m(i, i) = normal();
      for (std::size_t j = i + 1; j < d; ++j) {
        m(i, j) = gaussian_complex();
        m(j, i) = std::conj(m(i, j));
      }
    }
    return m;
  }

  ComplexMatrix random_unitary(std::size_t d) {
    EMat g(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) g(i, j) = gaussian_complex();
    Eigen::HouseholderQR<EMat> qr(g);
    return from_eigen(qr.householderQ() * EMat::Identity(d, d));
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qdiss::test

#include <catch2/catch_amalgamated.hpp>

#include "qdiss/correlations.hpp"
#include "qdiss/states.hpp"
#include "qdiss/witness.hpp"
#include "support.hpp"

using namespace qdiss;
using namespace qdiss::witness;
using qla::Complex;
using qla::ComplexMatrix;
using qla::DensityMatrix;
using qla::RealMatrix;
using qdiss::test::Rng;

namespace {

RealMatrix random_orthogonal(Rng& rng, std::size_t n) {
  Eigen::MatrixXd g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  RealMatrix o(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) o(i, j) = q(i, j);
  return o;
}

const DensityMatrix& cc_diag() {
  static const DensityMatrix cc = [] {
    const auto comp = states::computational_basis(2);
    return states::cc_state({{0.5, 0.0}, {0.0, 0.5}}, comp, comp);
  }();
  return cc;
}

}  // namespace

TEST_CASE("pauli basis") {
  const auto b = pauli_basis(2);
  CHECK(b.elements.size() == 4);
  CHECK(b.orthonormality_error() <= 1e-12);
  const double r = 1.0 / std::sqrt(2.0);

  ComplexMatrix half = ComplexMatrix::identity(2);
  half *= 0.5;
  const auto c = b.expand(half);
  CHECK(std::abs(c[0] - r) < 1e-15);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(c[i]) < 1e-15);

  const auto z = b.expand(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}});
  CHECK(std::abs(z[0] - r) < 1e-15);
  CHECK(std::abs(z[1]) < 1e-15);
  CHECK(std::abs(z[2]) < 1e-15);
  CHECK(std::abs(z[3] - r) < 1e-15);

  CHECK_THROWS_AS(pauli_basis(3), DomainError);
}

TEST_CASE("correlation matrix") {
  const auto p = pauli_basis(2);
  ComplexMatrix quarter = ComplexMatrix::identity(4);
  quarter *= 0.25;
  const RealMatrix r0 = correlation_matrix(DensityMatrix(quarter, {2, 2}), p, p);
  CHECK(std::abs(r0(0, 0) - 0.5) < 1e-15);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i || j) CHECK(std::abs(r0(i, j)) < 1e-15);

  for (double z : {0.1, 1.0 / 3.0, 0.8}) {
    const RealMatrix r = correlation_matrix(states::werner(z), p, p);
    CHECK(std::abs(r(0, 0) - 0.5) < 1e-14);
    for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(r(i, i) + z / 2) < 1e-14);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (i != j) CHECK(std::abs(r(i, j)) < 1e-14);
  }

  // a non-Hermitian "basis" produces complex coefficients
  OperatorBasis bad{2, {ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}}};
  CHECK_THROWS_AS(correlation_matrix(states::werner(0.5), bad, p), DomainError);
  CHECK_THROWS_AS(correlation_matrix(states::cc_pairs(2), p, p), DomainError);
}

TEST_CASE("decompose_sf ranks and reconstruction") {
  const auto p = pauli_basis(2);
  Rng rng(51);
  CHECK(decompose_sf(qla::tensor(rng.random_state({2}), rng.random_state({2})), p, p).rank == 1);
  CHECK(decompose_sf(states::werner(0.0), p, p).rank == 1);
  for (double z : {0.05, 0.2, 1.0 / 3.0, 1.0}) CHECK(decompose_sf(states::werner(z), p, p).rank == 4);
  CHECK(decompose_sf(cc_diag(), p, p).rank == 2);

  std::vector<DensityMatrix> zoo{cc_diag(), states::werner(0.3), states::bell(states::Bell::PhiPlus).density()};
  for (int i = 0; i < 10; ++i) zoo.push_back(rng.random_state({2, 2}, 1 + i % 4));
  for (const auto& r : zoo) {
    const auto rep = decompose_sf(r, p, p);
    CHECK(qla::max_abs_diff(rep.reconstruction(), r.matrix()) <= 1e-9);
  }
}

TEST_CASE("rank is basis independent") {
  Rng rng(52);
  const auto p = pauli_basis(2);
  std::vector<DensityMatrix> zoo{cc_diag(), states::werner(0.0), states::werner(0.3)};
  for (int i = 0; i < 6; ++i) zoo.push_back(rng.random_state({2, 2}, 1 + i % 4));
  for (const auto& r : zoo) {
    const auto ra = rotated(p, random_orthogonal(rng, 4));
    const auto rb = rotated(p, random_orthogonal(rng, 4));
    CHECK(ra.orthonormality_error() <= 1e-12);
    const auto base = decompose_sf(r, p, p);
    const auto rot = decompose_sf(r, ra, rb);
    CHECK(rot.rank == base.rank);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(rot.singular_values[k] - base.singular_values[k]) < 1e-10);
    CHECK(qla::max_abs_diff(rot.reconstruction(), r.matrix()) <= 1e-9);
  }
}

TEST_CASE("commutator test") {
  const auto cc = analyze(cc_diag());
  CHECK(cc.max_commutator_norm <= 1e-10);
  CHECK(cc.commutator_zero_discord);
  CHECK_FALSE(cc.rank_witness);

  const auto w = analyze(states::werner(1.0 / 3.0));
  CHECK(w.max_commutator_norm > 0.1);
  CHECK_FALSE(w.commutator_zero_discord);
  CHECK(w.rank == 4);
  CHECK(w.rank_witness);

  Rng rng(53);
  const auto prod = analyze(qla::tensor(rng.random_state({2}), rng.random_state({2})));
  CHECK(prod.rank == 1);
  CHECK(prod.commutator_zero_discord);

  const auto w0 = analyze(states::werner(0.0));
  CHECK(w0.rank == 1);
  CHECK_FALSE(w0.rank_witness);

  // B side: a quantum-classical state is zero discord when measured on B only
  const auto comp = states::computational_basis(2);
  const auto plus = states::qubit_basis(std::numbers::pi / 2, 0.0)[0].density();
  const DensityMatrix cq = states::cq_state({0.5, 0.5}, comp, {comp[0].density(), plus});
  const std::size_t swap[] = {1, 0};
  const DensityMatrix qc = qla::permute_legs(cq, swap);
  CHECK(analyze(cq, Side::A).commutator_zero_discord);
  CHECK_FALSE(analyze(cq, Side::B).commutator_zero_discord);
  CHECK(analyze(qc, Side::B).commutator_zero_discord);
  CHECK_FALSE(analyze(qc, Side::A).commutator_zero_discord);
}

TEST_CASE("witness verdicts on a state zoo agree with discord") {
  Rng rng(54);
  std::vector<DensityMatrix> zoo;
  for (int i = 0; i <= 20; ++i) zoo.push_back(states::werner(0.05 * i));
  for (auto b : {states::Bell::PsiPlus, states::Bell::PsiMinus, states::Bell::PhiPlus, states::Bell::PhiMinus}) {
    zoo.push_back(states::bell(b).density());
  }
  for (int i = 0; i < 10; ++i) {
    const auto basis_a = states::qubit_basis(rng.uniform(0.0, 3.0), rng.uniform(0.0, 6.0));
    const auto basis_b = states::qubit_basis(rng.uniform(0.0, 3.0), rng.uniform(0.0, 6.0));
    const double a = rng.uniform(), b = rng.uniform(), c = rng.uniform(), d = rng.uniform();
    const double s = a + b + c + d;
    zoo.push_back(states::cc_state({{a / s, b / s}, {c / s, d / s}}, basis_a, basis_b));
  }
  for (int i = 0; i < 10; ++i) {
    const double w = rng.uniform();
    zoo.push_back(states::cq_state({w, 1.0 - w}, states::qubit_basis(rng.uniform(0.0, 3.0), rng.uniform(0.0, 6.0)),
                                   {rng.random_state({2}), rng.random_state({2})}));
  }
  for (const auto& r : zoo) {
    const auto rep = analyze(r);
    const double d = correlations::discord(r).discord;
    CHECK(rep.commutator_zero_discord == (d <= 1e-6));
    if (rep.rank_witness) CHECK(d > 1e-6);
    CHECK(qla::max_abs_diff(rep.reconstruction(), r.matrix()) <= 1e-9);
  }
}

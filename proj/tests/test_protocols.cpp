#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "qdiss/correlations.hpp"
#include "qdiss/protocols.hpp"
#include "qdiss/states.hpp"
#include "support.hpp"

using namespace qdiss;
using namespace qdiss::protocols;
using qla::Complex;
using qla::DensityMatrix;

namespace {

std::vector<double> separable_grid() {
  std::vector<double> z;
  for (int i = 1; i <= 6; ++i) z.push_back(0.05 * i);
  z.push_back(1.0 / 3.0);
  return z;
}

std::vector<Complex> ket(std::size_t d, std::size_t i) {
  std::vector<Complex> v(d);
  v[i] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("kraus operators") {
  const auto dec = states::product_decomposition(1.0 / 3.0);
  const auto ka = build_kraus(Side::A, 1.0 / 3.0);
  REQUIRE(ka.operators.size() == 4);
  // M_A^0 = |0 Psi_0><00|
  const auto m0 = ka.operators[0];
  const auto col = m0.column(0);
  for (std::size_t f = 0; f < 2; ++f)
    for (std::size_t a = 0; a < 2; ++a) CHECK(std::abs(col[2 * f + a] - (f == 0 ? dec.psi(0)[a] : 0.0)) < 1e-15);
  for (std::size_t c = 1; c < 4; ++c)
    for (Complex x : m0.column(c)) CHECK(x == 0.0);

  for (double z : separable_grid()) {
    for (Side s : {Side::A, Side::B}) {
      const auto ch = build_kraus(s, z);
      CHECK(ch.completeness_error() <= 1e-12);
      for (std::size_t i = 0; i < 4; ++i) {
        // each M^dagger M is the projector on its input basis vector
        CHECK(qla::max_abs_diff(ch.operators[i].adjoint() * ch.operators[i], qla::ComplexMatrix::outer(ket(4, i), ket(4, i))) < 1e-12);
        for (std::size_t j = 0; j < 4; ++j) {
          if ((i >> 1) != (j >> 1)) CHECK(qla::max_abs(ch.operators[i] * ch.operators[j].adjoint()) < 1e-15);
        }
      }
    }
  }
  CHECK_THROWS_AS(build_kraus(Side::A, 0.5), DomainError);
}

TEST_CASE("joint kraus operators act only on their own legs") {
  const auto ka = build_kraus(Side::A, 0.25);
  const auto kb = build_kraus(Side::B, 0.25);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto joint = joint_kraus_operator(ka, kb, i);
    // legs [A1, A2, B1, B2]: the operator is (M_A (x) M_B) reindexed, nothing else
    const auto direct = qla::tensor(ka.operators[i], kb.operators[i]);
    CHECK(qla::max_abs_diff(joint, direct) < 1e-15);
  }
  CHECK_THROWS_AS(joint_kraus_operator(kb, ka, 0), DomainError);
}

TEST_CASE("kraus protocol end to end") {
  for (double z : separable_grid()) {
    const auto r = run_kraus_protocol(z);
    CHECK(r.final_state.legs() == qla::Legs{2, 2});
    CHECK(std::abs(r.post_operation.matrix().trace() - 1.0) <= 1e-12);
    CHECK(r.trace_distance_to_target <= 1e-10);
    CHECK(test::oracle_trace_distance(r.final_state.matrix(), states::werner(z).matrix()) <= 1e-10);
    CHECK(r.passed());
    CHECK(r.certification.discord() > 1e-3);
    CHECK(r.certification.concurrence() <= 1e-10);
  }
  const auto tiny = run_kraus_protocol(1e-6);
  qla::ComplexMatrix quarter = qla::ComplexMatrix::identity(4);
  quarter *= 0.25;
  CHECK(qla::trace_distance(tiny.final_state.matrix(), quarter) <= 1e-5);

  const auto zero = run_kraus_protocol(0.0);
  CHECK(qla::max_abs_diff(zero.final_state.matrix(), quarter) <= 1e-10);
  CHECK(zero.certification.discord() <= 1e-6);

  CHECK_THROWS_AS(run_kraus_protocol(0.5), DomainError);
}

TEST_CASE("kraus certification at z = 1/3") {
  const auto r = run_kraus_protocol(1.0 / 3.0);
  const auto& c = r.certification;
  CHECK(std::abs(c.concurrence()) <= 1e-10);
  CHECK(std::abs(c.negativity()) <= 1e-10);
  CHECK(c.rank() == 4);
  CHECK(c.witness.rank_witness);
  CHECK_FALSE(c.witness.commutator_zero_discord);
  CHECK(std::abs(c.discord() - test::werner_discord_formula(1.0 / 3.0)) <= 1e-6);
  CHECK(std::abs(c.geometric_discord() - 1.0 / 18.0) <= 1e-10);

  // the input's pair marginals carry no discord
  const std::size_t drop[] = {1, 3};
  CHECK(correlations::discord(qla::partial_trace(r.initial, drop)).discord <= 1e-6);
}

TEST_CASE("unitary protocol") {
  const double z = 1.0 / 3.0;
  CHECK(factor_overlap(z) <= 1e-10);
  const auto ua = build_unitary(Side::A, z);
  const auto ub = build_unitary(Side::B, z);
  CHECK(ua.unitarity_error() <= 1e-10);
  CHECK(ub.unitarity_error() <= 1e-10);

  const auto dec = states::product_decomposition(z);
  for (std::size_t m = 0; m < 2; ++m) {
    for (std::size_t n = 0; n < 2; ++n) {
      const std::size_t l = 2 * m + n;
      // |mn0> -> |mn> Psi_l, |mn1> -> |mn> Phi_l on A; swapped on B
      const auto c0 = ua.matrix.column(2 * l);
      const auto c1 = ua.matrix.column(2 * l + 1);
      const auto b0 = ub.matrix.column(2 * l);
      for (std::size_t row = 0; row < 8; ++row) {
        const bool in_block = row / 2 == l;
        CHECK(std::abs(c0[row] - (in_block ? dec.psi(l)[row % 2] : 0.0)) < 1e-15);
        CHECK(std::abs(c1[row] - (in_block ? dec.phi(l)[row % 2] : 0.0)) < 1e-15);
        CHECK(std::abs(b0[row] - (in_block ? dec.phi(l)[row % 2] : 0.0)) < 1e-15);
      }
      // no mixing between control blocks
      for (std::size_t l2 = 0; l2 < 4; ++l2) {
        if (l2 == l) continue;
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b) CHECK(ua.matrix(2 * l + a, 2 * l2 + b) == 0.0);
      }
    }
  }

  const auto r = run_unitary_protocol(z);
  CHECK(r.trace_distance_to_target <= 1e-10);
  CHECK(std::abs(r.final_state.purity() - (1 + 3 * z * z) / 4) <= 1e-10);
  CHECK(std::abs(r.post_operation.matrix().trace() - 1.0) <= 1e-12);
  auto before = qla::eigenvalues(r.initial.matrix());
  auto after = qla::eigenvalues(r.post_operation.matrix());
  for (std::size_t i = 0; i < before.size(); ++i) CHECK(std::abs(before[i] - after[i]) <= 1e-10);

  CHECK(qla::max_abs_diff(r.post_operation.matrix(), unitary_branch_mixture(z)) <= 1e-10);
  for (std::size_t m = 0; m < 2; ++m) {
    for (std::size_t n = 0; n < 2; ++n) {
      const std::size_t l = 2 * m + n;
      auto expected = qla::tensor(dec.psi(l).projector(), dec.phi(l).projector()) +
                      qla::tensor(dec.phi(l).projector(), dec.psi(l).projector());
      expected *= 0.5;
      CHECK(qla::max_abs_diff(branch_block(r.post_operation, m, n), expected) <= 1e-10);
    }
  }
}

TEST_CASE("unitary protocol below z = 1/3 reports unavailability") {
  for (double z : {0.05, 0.1, 0.2, 0.3}) {
    CHECK(factor_overlap(z) > 1e-8);
    try {
      build_unitary(Side::A, z);
      FAIL("expected ProtocolUnavailable");
    } catch (const ProtocolUnavailable& e) {
      CHECK(std::abs(e.residual() - factor_overlap(z)) < 1e-15);
    }
    CHECK_THROWS_AS(run_unitary_protocol(z), ProtocolUnavailable);
  }
}

#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "qdiss/correlations.hpp"
#include "qdiss/states.hpp"
#include "support.hpp"

using namespace qdiss;
using namespace qdiss::states;
using qla::Complex;
using qla::ComplexMatrix;
using qla::DensityMatrix;
using qla::PureState;
using qdiss::test::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> z_grid() {
  std::vector<double> z;
  for (int i = 0; i <= 6; ++i) z.push_back(0.05 * i);
  z.push_back(1.0 / 3.0);
  return z;
}

}  // namespace

TEST_CASE("bell states") {
  const PureState psi_minus = bell(Bell::PsiMinus);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(psi_minus[0]) == 0.0);
  CHECK(std::abs(psi_minus[1] - r) < 1e-15);
  CHECK(std::abs(psi_minus[2] + r) < 1e-15);
  CHECK(std::abs(psi_minus[3]) == 0.0);

  ComplexMatrix half = ComplexMatrix::identity(2);
  half *= 0.5;
  for (Bell b : {Bell::PsiPlus, Bell::PsiMinus, Bell::PhiPlus, Bell::PhiMinus}) {
    const DensityMatrix rho = bell(b).density();
    for (std::size_t leg : {0u, 1u}) {
      const std::size_t drop[] = {leg};
      CHECK(qla::max_abs_diff(qla::partial_trace(rho, drop).matrix(), half) < 1e-15);
    }
    for (Bell c : {Bell::PsiPlus, Bell::PsiMinus, Bell::PhiPlus, Bell::PhiMinus}) {
      const double expected = b == c ? 1.0 : 0.0;
      CHECK(std::abs(qla::inner(bell(b).amplitudes(), bell(c).amplitudes()) - expected) < 1e-15);
    }
  }
  CHECK(parse_bell("singlet") == Bell::PsiMinus);
  CHECK(parse_bell("phi+") == Bell::PhiPlus);
  CHECK_THROWS_AS(parse_bell("chi"), DomainError);
}

TEST_CASE("werner states") {
  ComplexMatrix quarter = ComplexMatrix::identity(4);
  quarter *= 0.25;
  CHECK(qla::max_abs_diff(werner(0.0).matrix(), quarter) == 0.0);
  CHECK(qla::max_abs_diff(werner(1.0).matrix(), bell(Bell::PsiMinus).projector()) < 1e-15);
  CHECK_THROWS_AS(werner(-0.1), DomainError);
  CHECK_THROWS_AS(werner(1.5), DomainError);

  for (double z : {0.0, 0.1, 1.0 / 3.0, 0.5, 0.9, 1.0}) {
    auto ev = test::oracle_eigenvalues(test::to_eigen(werner(z).matrix()));
    CHECK(std::abs(ev(3) - (1 + 3 * z) / 4) < 1e-12);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(ev(i) - (1 - z) / 4) < 1e-12);
  }
  const auto ev = qla::eigenvalues(werner(1.0 / 3.0).matrix());
  CHECK(std::abs(ev[0] - 0.5) < 1e-12);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(ev[i] - 1.0 / 6.0) < 1e-12);
}

TEST_CASE("cc and cq states") {
  const auto comp = computational_basis(2);
  const DensityMatrix cc = cc_state({{0.5, 0.0}, {0.0, 0.5}}, comp, comp);
  ComplexMatrix expected(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  CHECK(qla::max_abs_diff(cc.matrix(), expected) < 1e-15);

  const DensityMatrix pure = cc_state({{0.0, 1.0}, {0.0, 0.0}}, comp, comp);
  CHECK(std::abs(pure.purity() - 1.0) < 1e-14);
  CHECK(std::abs(pure.matrix()(1, 1) - 1.0) < 1e-15);

  CHECK_THROWS_AS(cc_state({{0.5, 0.0}, {0.0, 0.4}}, comp, comp), DomainError);
  CHECK_THROWS_AS(cc_state({{1.1, -0.1}, {0.0, 0.0}}, comp, comp), DomainError);
  const std::vector<PureState> skew{PureState({1.0, 0.0}, {2}), PureState({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}, {2})};
  CHECK_THROWS_AS(cc_state({{0.5, 0.0}, {0.0, 0.5}}, skew, comp), DomainError);

  const DensityMatrix k0 = PureState({1.0, 0.0}, {2}).density();
  const DensityMatrix k1 = PureState({0.0, 1.0}, {2}).density();
  const DensityMatrix cq = cq_state({0.5, 0.5}, comp, {k0, k1});
  CHECK(qla::max_abs_diff(cq.matrix(), cc.matrix()) < 1e-15);

  Rng rng(21);
  const DensityMatrix sigma = rng.random_state({2});
  const DensityMatrix same = cq_state({0.3, 0.7}, qubit_basis(0.4, 1.1), {sigma, sigma});
  CHECK(std::abs(correlations::total_correlation(same)) < 1e-12);
}

TEST_CASE("qubit bases are orthonormal") {
  for (double t : {0.0, 0.3, kPi / 2, kPi}) {
    for (double p : {0.0, 1.0, 4.0}) {
      const auto b = qubit_basis(t, p);
      CHECK(std::abs(qla::inner(b[0].amplitudes(), b[1].amplitudes())) < 1e-15);
      CHECK(std::abs(b[0].norm() - 1.0) < 1e-15);
    }
  }
}

TEST_CASE("solve_phases") {
  const auto at13 = solve_phases(1.0 / 3.0);
  CHECK(at13.theta[0] == 0.0);
  CHECK(std::abs(at13.theta[1] - kPi / 2) < 1e-15);
  CHECK(std::abs(at13.theta[2] - kPi / 2) < 1e-7);  // sqrt of a ~1e-16 radicand
  CHECK(std::abs(at13.theta[3] - kPi / 2) < 1e-7);

  const auto at0 = solve_phases(0.0);
  CHECK(std::abs(std::cos(at0.theta[2]) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(at0.theta[2] - kPi / 4) < 1e-15);
  CHECK(std::abs(at0.theta[3] - 3 * kPi / 4) < 1e-15);

  for (double z : z_grid()) {
    const auto s = solve_phases(z);
    CHECK(s.residual(z) <= 1e-10);
    CHECK(std::sin(s.theta[2]) > 0.0);
    CHECK(std::abs(std::sin(s.theta[2]) - std::sin(s.theta[3])) < 1e-15);
    CHECK(std::abs(std::cos(s.theta[3]) + std::cos(s.theta[2])) < 1e-15);
    CHECK(s.theta[2] >= kPi / 4 - 1e-15);
    CHECK(s.theta[2] <= kPi / 2 + 1e-15);
  }
  CHECK_THROWS_AS(solve_phases(0.34), DomainError);
  CHECK_THROWS_AS(solve_phases(-0.01), DomainError);
}

TEST_CASE("eta states overlaps and reconstruction on the z grid") {
  for (double z : z_grid()) {
    const auto etas = eta_states(z);
    ComplexMatrix sum(4, 4);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK_FALSE(etas[j].normalized());
      sum += etas[j].projector();
      for (std::size_t k = 0; k < 4; ++k) {
        const Complex ov = qla::inner(etas[j].amplitudes(), etas[k].amplitudes());
        CHECK(std::abs(ov - (j == k ? 0.25 : z / 4)) <= 1e-10);
      }
    }
    CHECK(qla::max_abs_diff(sum, werner(z).matrix()) <= 1e-10);
  }
  ComplexMatrix quarter = ComplexMatrix::identity(4);
  quarter *= 0.25;
  CHECK(qla::max_abs_diff(product_decomposition(0.0).reconstruction(), quarter) <= 1e-12);
  CHECK_THROWS_AS(eta_states(0.5), DomainError);
}

TEST_CASE("factor_pure") {
  const PureState k01({0.0, 1.0, 0.0, 0.0}, {2, 2});
  const auto f = factor_pure(k01);
  CHECK(std::abs(f.first[0] - 1.0) < 1e-15);
  CHECK(std::abs(f.second[1] - 1.0) < 1e-15);
  CHECK(f.residual < 1e-15);

  const auto ent = factor_pure(bell(Bell::PsiMinus));
  CHECK(std::abs(ent.residual - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK_THROWS_AS(factor_pure(bell(Bell::PsiMinus), true), DomainError);

  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    const PureState u(rng.random_vector(2), {2});
    const PureState v(rng.random_vector(2), {2});
    const Complex g = std::polar(1.0, rng.uniform(0.0, 2 * kPi));
    const auto fp = factor_pure(tensor(u, v).scaled(g), true);
    CHECK(distance_up_to_phase(fp.first, u) <= 1e-10);
    CHECK(distance_up_to_phase(fp.second, v) <= 1e-10);
    CHECK(fp.residual <= 1e-10);
    // first nonzero amplitude real-positive
    CHECK(std::abs(fp.first[0].imag()) == 0.0);
    CHECK(fp.first[0].real() > 0.0);
    // stored phase and scale reproduce the input exactly
    const PureState rebuilt = tensor(fp.first, fp.second).scaled(fp.phase * fp.scale);
    const PureState input = tensor(u, v).scaled(g);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(rebuilt[k] - input[k]) <= 1e-10);
  }
}

TEST_CASE("explicit z = 1/3 factors") {
  const auto ex = explicit_factors_z13();
  ComplexMatrix sum(4, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(std::abs(ex[j].psi.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(ex[j].phi.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(qla::inner(ex[j].psi.amplitudes(), ex[j].phi.amplitudes())) <= 1e-10);
    for (std::size_t k = 0; k < 4; ++k) {
      if (j == k) continue;
      const Complex p = qla::inner(ex[j].psi.amplitudes(), ex[k].psi.amplitudes()) *
                        qla::inner(ex[j].phi.amplitudes(), ex[k].phi.amplitudes());
      CHECK(std::abs(p - 1.0 / 3.0) <= 1e-10);
    }
    sum += qla::tensor(ex[j].psi.projector(), ex[j].phi.projector());
  }
  sum *= 0.25;
  CHECK(qla::max_abs_diff(sum, werner(1.0 / 3.0).matrix()) <= 1e-10);

  // eta_1 at z = 1/3 is (1/2) Psi_1 (x) Phi_1
  const auto etas = eta_states(1.0 / 3.0);
  CHECK(std::abs(4.0 * std::norm(etas[0].norm()) - 1.0) < 1e-12);
  CHECK(distance_up_to_phase(etas[0].normalize(), tensor(ex[0].psi, ex[0].phi)) <= 1e-9);
}

TEST_CASE("product decomposition matches the explicit factors at z = 1/3") {
  const auto dec = product_decomposition(1.0 / 3.0);
  const auto ex = explicit_factors_z13();
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(distance_up_to_phase(dec.psi(j), ex[j].psi) <= 1e-9);
    CHECK(distance_up_to_phase(dec.phi(j), ex[j].phi) <= 1e-9);
  }
}

TEST_CASE("product decomposition on the z grid") {
  for (double z : z_grid()) {
    const auto dec = product_decomposition(z);
    CHECK(dec.max_residual() <= 1e-10);
    CHECK(qla::max_abs_diff(dec.reconstruction(), werner(z).matrix()) <= 1e-10);
    for (std::size_t j = 0; j < 4; ++j) {
      const PureState half = tensor(dec.psi(j), dec.phi(j)).scaled(0.5 * dec.factors[j].phase);
      for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(half[k] - dec.etas[j][k]) <= 1e-10);
    }
  }
  const auto d02 = product_decomposition(0.2);
  CHECK(qla::trace_distance(d02.reconstruction(), werner(0.2).matrix()) <= 1e-10);
  CHECK_THROWS_AS(product_decomposition(0.34), DomainError);
}

TEST_CASE("cc_pairs") {
  const DensityMatrix p2 = cc_pairs(2);
  CHECK(p2.legs() == qla::Legs{2, 2, 2, 2});
  CHECK(p2.dim() == 16);
  CHECK(std::abs(p2.matrix().trace() - 1.0) < 1e-15);
  std::size_t rank = 0;
  for (double l : qla::eigenvalues(p2.matrix())) rank += l > 1e-12;
  CHECK(rank == 4);

  // legs are [A1, A2, B1, B2]: each (Aj, Bj) marginal is a CC pair
  const auto comp = computational_basis(2);
  const DensityMatrix pair = cc_state({{0.5, 0.0}, {0.0, 0.5}}, comp, comp);
  const std::size_t keep_pair1[] = {1, 3};
  const std::size_t keep_pair2[] = {0, 2};
  CHECK(qla::max_abs_diff(qla::partial_trace(p2, keep_pair1).matrix(), pair.matrix()) < 1e-15);
  CHECK(qla::max_abs_diff(qla::partial_trace(p2, keep_pair2).matrix(), pair.matrix()) < 1e-15);
  CHECK(correlations::discord(qla::partial_trace(p2, keep_pair1)).discord <= 1e-6);

  const DensityMatrix p3 = cc_pairs(3);
  CHECK(p3.dim() == 64);
  rank = 0;
  for (double l : qla::eigenvalues(p3.matrix())) rank += l > 1e-12;
  CHECK(rank == 8);
  CHECK(std::abs(p3.purity() - 0.125) < 1e-14);
  CHECK_THROWS_AS(cc_pairs(4), DomainError);
}

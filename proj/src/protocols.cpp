#include "qdiss/protocols.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qdiss/states.hpp"

namespace qdiss::protocols {

using qla::Complex;

namespace {

std::vector<Complex> basis_vector(std::size_t dim, std::size_t i) {
  std::vector<Complex> v(dim);
  v[i] = 1.0;
  return v;
}

std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> v(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) v[i * b.size() + j] = a[i] * b[j];
  }
  return v;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

ProtocolResult finish(double z, DensityMatrix initial, DensityMatrix post, std::span<const std::size_t> discard,
                      const correlations::OptimizerOptions& opts) {
  DensityMatrix final_state = qla::partial_trace(post, discard);
  DensityMatrix target = states::werner(z);
  const double td = qla::trace_distance(final_state, target);
  Certification cert = certify(final_state, opts);
  return ProtocolResult{z,           std::move(initial), std::move(post), std::move(final_state),
                        std::move(target), td,           std::move(cert)};
}

}  // namespace

double KrausChannel::completeness_error() const {
  if (operators.empty()) return std::numeric_limits<double>::infinity();
  const std::size_t d = operators.front().cols();
  ComplexMatrix sum(d, d);
  for (const auto& m : operators) sum += m.adjoint() * m;
  return qla::max_abs_diff(sum, ComplexMatrix::identity(d));
}

KrausChannel build_kraus(Side side, double z) {
  const auto dec = states::product_decomposition(z);
  KrausChannel ch{{}, side, z};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto flag = basis_vector(2, i >> 1);
    const auto& factor = side == Side::A ? dec.psi(i) : dec.phi(i);
    ch.operators.push_back(ComplexMatrix::outer(kron(flag, factor.amplitudes()), basis_vector(4, i)));
  }
  return ch;
}

double LocalUnitary::unitarity_error() const {
  const auto id = ComplexMatrix::identity(matrix.rows());
  return std::max(qla::max_abs_diff(matrix.adjoint() * matrix, id), qla::max_abs_diff(matrix * matrix.adjoint(), id));
}

double factor_overlap(double z) {
  const auto dec = states::product_decomposition(z);
  double worst = 0.0;
  for (std::size_t l = 0; l < 4; ++l) {
    worst = std::max(worst, std::abs(qla::inner(dec.psi(l).amplitudes(), dec.phi(l).amplitudes())));
  }
  return worst;
}

LocalUnitary build_unitary(Side side, double z) {
  const auto dec = states::product_decomposition(z);
  const double overlap = factor_overlap(z);
  if (overlap > kOrthogonalityTol) {
    throw ProtocolUnavailable("unitary protocol unavailable at z = " + std::to_string(z) +
                                  ": factors are not orthogonal (|<Psi|Phi>| = " + std::to_string(overlap) + ")",
                              overlap);
  }
  ComplexMatrix u(8, 8);
  for (std::size_t m = 0; m < 2; ++m) {
    for (std::size_t n = 0; n < 2; ++n) {
      const std::size_t l = 2 * m + n;
      const auto& on_zero = side == Side::A ? dec.psi(l) : dec.phi(l);
      const auto& on_one = side == Side::A ? dec.phi(l) : dec.psi(l);
      const auto control = ComplexMatrix::outer(basis_vector(4, l), basis_vector(4, l));
      ComplexMatrix prep = ComplexMatrix::outer(on_zero.amplitudes(), basis_vector(2, 0));
      prep += ComplexMatrix::outer(on_one.amplitudes(), basis_vector(2, 1));
      u += qla::tensor(control, prep);
    }
  }
  return LocalUnitary{std::move(u), side, z};
}

Certification certify(const DensityMatrix& two_qubit_state, const correlations::OptimizerOptions& opts) {
  return Certification{correlations::discord(two_qubit_state, opts), witness::analyze(two_qubit_state)};
}

Certification certify(const ProtocolResult& result, const correlations::OptimizerOptions& opts) {
  return certify(result.final_state, opts);
}

ComplexMatrix joint_kraus_operator(const KrausChannel& a, const KrausChannel& b, std::size_t i) {
  if (a.side != Side::A || b.side != Side::B) throw DomainError("joint_kraus_operator expects an A channel and a B channel");
  const qla::Legs legs{2, 2, 2, 2};
  const std::size_t a_legs[] = {0, 1};
  const std::size_t b_legs[] = {2, 3};
  return qla::embed(a.operators.at(i), legs, a_legs) * qla::embed(b.operators.at(i), legs, b_legs);
}

ProtocolResult run_kraus_protocol(double z, const correlations::OptimizerOptions& opts) {
  const KrausChannel ka = build_kraus(Side::A, z);
  const KrausChannel kb = build_kraus(Side::B, z);
  DensityMatrix initial = states::cc_pairs(2);  // legs [A1, A2, B1, B2]

  ComplexMatrix post(16, 16);
  for (std::size_t i = 0; i < ka.operators.size(); ++i) {
    const ComplexMatrix k = joint_kraus_operator(ka, kb, i);
    post += k * initial.matrix() * k.adjoint();
  }
  DensityMatrix post_state(hermitian_part(post), initial.legs());
  const std::size_t discard[] = {0, 2};  // A1, B1
  return finish(z, std::move(initial), std::move(post_state), discard, opts);
}

ProtocolResult run_unitary_protocol(double z, const correlations::OptimizerOptions& opts) {
  const LocalUnitary ua = build_unitary(Side::A, z);
  const LocalUnitary ub = build_unitary(Side::B, z);
  DensityMatrix initial = states::cc_pairs(3);  // legs [A1, A2, A3, B1, B2, B3]

  const ComplexMatrix u = qla::tensor(ua.matrix, ub.matrix);
  DensityMatrix post_state(hermitian_part(u * initial.matrix() * u.adjoint()), initial.legs());
  const std::size_t discard[] = {0, 1, 3, 4};  // A1, A2, B1, B2
  return finish(z, std::move(initial), std::move(post_state), discard, opts);
}

ComplexMatrix unitary_branch_mixture(double z) {
  const auto dec = states::product_decomposition(z);
  ComplexMatrix sum(64, 64);
  for (std::size_t l = 0; l < 4; ++l) {
    const auto control = ComplexMatrix::outer(basis_vector(4, l), basis_vector(4, l));
    const auto psi = dec.psi(l).projector();
    const auto phi = dec.phi(l).projector();
    sum += qla::tensor(qla::tensor(control, psi), qla::tensor(control, phi));
    sum += qla::tensor(qla::tensor(control, phi), qla::tensor(control, psi));
  }
  sum *= 1.0 / 8.0;
  return sum;
}

ComplexMatrix branch_block(const DensityMatrix& post_operation, std::size_t m, std::size_t n) {
  if (post_operation.legs() != qla::Legs{2, 2, 2, 2, 2, 2}) throw DomainError("branch_block expects a six-qubit state");
  const std::size_t mn = 2 * m + n;
  ComplexMatrix blk(4, 4);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      for (std::size_t a2 = 0; a2 < 2; ++a2) {
        for (std::size_t b2 = 0; b2 < 2; ++b2) {
          const std::size_t row = mn * 16 + a * 8 + mn * 2 + b;
          const std::size_t col = mn * 16 + a2 * 8 + mn * 2 + b2;
          blk(2 * a + b, 2 * a2 + b2) = post_operation.matrix()(row, col);
        }
      }
    }
  }
  const Complex tr = blk.trace();
  if (std::abs(tr) == 0.0) throw DomainError("branch_block: outcome has zero probability");
  blk *= 1.0 / tr;
  return blk;
}

}  // namespace qdiss::protocols

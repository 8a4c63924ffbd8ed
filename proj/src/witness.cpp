#include "qdiss/witness.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qdiss::witness {

using qla::Complex;

double OperatorBasis::orthonormality_error() const {
  double e = 0.0;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    e = std::max(e, qla::hermiticity_error(elements[i]));
    for (std::size_t j = 0; j < elements.size(); ++j) {
      const Complex ov = (elements[i] * elements[j]).trace();
      e = std::max(e, std::abs(ov - (i == j ? 1.0 : 0.0)));
    }
  }
  return e;
}

std::vector<Complex> OperatorBasis::expand(const ComplexMatrix& op) const {
  std::vector<Complex> c;
  c.reserve(elements.size());
  for (const auto& x : elements) c.push_back((x * op).trace());
  return c;
}

OperatorBasis pauli_basis(std::size_t d) {
  if (d != 2) throw DomainError("pauli_basis supports d = 2 only (got " + std::to_string(d) + ")");
  const double r = std::numbers::sqrt2 / 2.0;
  const Complex i{0.0, r};
  return OperatorBasis{2,
                       {ComplexMatrix{{r, 0.0}, {0.0, r}}, ComplexMatrix{{0.0, r}, {r, 0.0}},
                        ComplexMatrix{{0.0, -i}, {i, 0.0}}, ComplexMatrix{{r, 0.0}, {0.0, -r}}}};
}

OperatorBasis rotated(const OperatorBasis& basis, const RealMatrix& orthogonal) {
  const std::size_t n = basis.elements.size();
  if (orthogonal.rows() != n || orthogonal.cols() != n) throw DomainError("rotation size does not match the basis");
  OperatorBasis out{basis.dim, {}};
  for (std::size_t m = 0; m < n; ++m) {
    ComplexMatrix y(basis.dim, basis.dim);
    for (std::size_t k = 0; k < n; ++k) y += orthogonal(m, k) * basis.elements[k];
    out.elements.push_back(std::move(y));
  }
  return out;
}

RealMatrix correlation_matrix(const DensityMatrix& rho, const OperatorBasis& basis_a, const OperatorBasis& basis_b) {
  if (rho.legs().size() != 2 || rho.legs()[0] != basis_a.dim || rho.legs()[1] != basis_b.dim) {
    throw DomainError("correlation_matrix: operator bases do not match the state's legs");
  }
  const std::size_t na = basis_a.elements.size();
  const std::size_t nb = basis_b.elements.size();
  RealMatrix r(na, nb);
  for (std::size_t n = 0; n < na; ++n) {
    for (std::size_t m = 0; m < nb; ++m) {
      const Complex v = (rho.matrix() * qla::tensor(basis_a.elements[n], basis_b.elements[m])).trace();
      if (std::abs(v.imag()) > 1e-10) {
        throw DomainError("correlation_matrix: imaginary coefficient " + std::to_string(v.imag()) +
                          " (basis not Hermitian?)");
      }
      r(n, m) = v.real();
    }
  }
  return r;
}

ComplexMatrix WitnessReport::reconstruction() const {
  ComplexMatrix sum(d_a * d_b, d_a * d_b);
  for (std::size_t k = 0; k < rank; ++k) sum += singular_values[k] * qla::tensor(s_ops[k], f_ops[k]);
  return sum;
}

WitnessReport decompose_sf(const DensityMatrix& rho, const OperatorBasis& basis_a, const OperatorBasis& basis_b) {
  WitnessReport rep;
  rep.r = correlation_matrix(rho, basis_a, basis_b);
  rep.d_a = basis_a.dim;
  rep.d_b = basis_b.dim;
  const auto svd = qla::svd_real(rep.r);
  rep.singular_values = svd.singular;
  for (double c : svd.singular) {
    if (c > kRankTol) ++rep.rank;
  }
  // S_k = sum_n U_nk A_n, F_k = sum_m V_mk B_m
  for (std::size_t k = 0; k < rep.rank; ++k) {
    ComplexMatrix s(basis_a.dim, basis_a.dim);
    for (std::size_t n = 0; n < basis_a.elements.size(); ++n) s += svd.u(n, k) * basis_a.elements[n];
    ComplexMatrix f(basis_b.dim, basis_b.dim);
    for (std::size_t m = 0; m < basis_b.elements.size(); ++m) f += svd.v(m, k) * basis_b.elements[m];
    rep.s_ops.push_back(std::move(s));
    rep.f_ops.push_back(std::move(f));
  }
  return rep;
}

CommutatorResult commutator_test(const WitnessReport& report, Side side) {
  const auto& ops = side == Side::A ? report.s_ops : report.f_ops;
  CommutatorResult out;
  for (std::size_t mu = 0; mu < ops.size(); ++mu) {
    for (std::size_t nu = mu + 1; nu < ops.size(); ++nu) {
      out.max_norm = std::max(out.max_norm, qla::frobenius_norm(ops[mu] * ops[nu] - ops[nu] * ops[mu]));
    }
  }
  if (!ops.empty()) {
    // A generic real combination of commuting Hermitian operators has their
    // common eigenbasis as its own.
    const std::size_t d = ops.front().rows();
    ComplexMatrix mix(d, d);
    for (std::size_t k = 0; k < ops.size(); ++k) mix += (1.0 / std::sqrt(2.0 + 1.618 * static_cast<double>(k))) * ops[k];
    const auto eig = qla::hermitian_eig(mix);
    for (const auto& op : ops) {
      const ComplexMatrix rotated_op = eig.vectors.adjoint() * op * eig.vectors;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          if (i != j) out.diag_residual = std::max(out.diag_residual, std::abs(rotated_op(i, j)));
        }
      }
    }
  }
  out.zero_discord = out.max_norm <= kCommutatorTol && out.diag_residual <= kSimultaneousDiagTol;
  return out;
}

bool rank_witness(const WitnessReport& report, std::size_t d) { return report.rank > d; }

WitnessReport analyze(const DensityMatrix& rho, Side side) {
  if (rho.legs() != qla::Legs{2, 2}) throw DomainError("witness analysis is defined for two-qubit states only");
  WitnessReport rep = decompose_sf(rho, pauli_basis(2), pauli_basis(2));
  const auto comm = commutator_test(rep, side);
  rep.max_commutator_norm = comm.max_norm;
  rep.simultaneous_diag_residual = comm.diag_residual;
  rep.commutator_zero_discord = comm.zero_discord;
  rep.rank_witness = rank_witness(rep, side == Side::A ? rep.d_a : rep.d_b);
  return rep;
}

}  // namespace qdiss::witness

#pragma once

// Correlation-matrix decomposition rho = sum_k c_k S_k (x) F_k and the two
// nonzero-discord witnesses built on it: the rank test L > d_A and the
// commutator test on the local operators S_k (or F_k).

#include <cstddef>
#include <vector>

#include "qdiss/qla.hpp"

namespace qdiss::witness {

using qla::ComplexMatrix;
using qla::DensityMatrix;
using qla::RealMatrix;

inline constexpr double kRankTol = 1e-10;
inline constexpr double kCommutatorTol = 1e-9;
inline constexpr double kSimultaneousDiagTol = 1e-8;

/// d^2 Hermitian operators, orthonormal under Tr(XY).
struct OperatorBasis {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> elements;

  // max |Tr(X_i X_j) - delta_ij| and Hermiticity errors combined.
  double orthonormality_error() const;
  // Coefficients Tr(X_n op); real for Hermitian op.
  std::vector<qla::Complex> expand(const ComplexMatrix& op) const;
};

/// {I, X, Y, Z} / sqrt(2). Only d = 2 is supported.
OperatorBasis pauli_basis(std::size_t d);

/// New basis Y_m = sum_n o_mn X_n for a real orthogonal o.
OperatorBasis rotated(const OperatorBasis& basis, const RealMatrix& orthogonal);

/// r_nm = Tr[rho (A_n (x) B_m)]. Throws DomainError if an imaginary part
/// exceeds 1e-10.
RealMatrix correlation_matrix(const DensityMatrix& rho, const OperatorBasis& basis_a, const OperatorBasis& basis_b);

enum class Side { A, B };

struct WitnessReport {
  RealMatrix r;
  std::vector<double> singular_values;  // descending
  std::size_t rank = 0;                 // singular values above 1e-10
  std::vector<ComplexMatrix> s_ops;     // S_k, k < rank
  std::vector<ComplexMatrix> f_ops;     // F_k, k < rank
  std::size_t d_a = 0;
  std::size_t d_b = 0;

  // Filled by analyze(); decompose_sf leaves them at their defaults.
  double max_commutator_norm = 0.0;
  double simultaneous_diag_residual = 0.0;
  bool rank_witness = false;
  bool commutator_zero_discord = false;

  // sum_k c_k S_k (x) F_k
  ComplexMatrix reconstruction() const;
};

WitnessReport decompose_sf(const DensityMatrix& rho, const OperatorBasis& basis_a, const OperatorBasis& basis_b);

struct CommutatorResult {
  double max_norm = 0.0;             // max Frobenius norm of [X_mu, X_nu]
  double diag_residual = 0.0;        // off-diagonal residue in a common eigenbasis
  bool zero_discord = false;
};

/// Tests the L(L-1)/2 commutators among S_k (side A) or F_k (side B). Zero
/// discord is declared only when every commutator vanishes (<= 1e-9) and a
/// common eigenbasis diagonalizes all operators (residual <= 1e-8).
CommutatorResult commutator_test(const WitnessReport& report, Side side = Side::A);

/// L > d: a sufficient condition for nonzero discord. False is inconclusive.
bool rank_witness(const WitnessReport& report, std::size_t d);

/// Full pipeline in the Pauli basis on both qubits, with verdicts filled in.
WitnessReport analyze(const DensityMatrix& rho, Side side = Side::A);

}  // namespace qdiss::witness

#pragma once

// Two local-operation pipelines that turn perfectly classically correlated
// qubit pairs into a separable Werner state with nonzero discord.
//
//  * Kraus protocol (two pairs): a correlated-index Kraus sum
//      rho' = sum_i (M_A^i (x) M_B^i) rho (M_A^i (x) M_B^i)^dagger
//    with M_A^i = |f_i Psi_i><i| on A1A2 (flag qubit f_i = i >> 1 on A1,
//    factor on A2) and likewise on B with Phi_i, then a trace over A1, B1.
//    The correlated index is what the classical correlations of the input
//    already provide; nothing beyond that sum is modelled.
//
//  * Unitary protocol (three pairs): controlled preparations
//      U_A = sum_mn |mn><mn| (x) (|Psi_{2m+n}><0| + |Phi_{2m+n}><1|)
//    and U_B with Psi and Phi swapped, then a trace over A1A2B1B2.
//    U_A is unitary only when <Psi_l|Phi_l> = 0 for all l.

#include <cstddef>
#include <vector>

#include "qdiss/correlations.hpp"
#include "qdiss/qla.hpp"
#include "qdiss/witness.hpp"

namespace qdiss::protocols {

using qla::ComplexMatrix;
using qla::DensityMatrix;

enum class Side { A, B };

inline constexpr double kEndToEndTol = 1e-10;
inline constexpr double kOrthogonalityTol = 1e-8;

struct KrausChannel {
  std::vector<ComplexMatrix> operators;  // 4x4, acting on the side's two qubits
  Side side = Side::A;
  double z = 0.0;

  // max-abs of sum_i M_i^dagger M_i - I
  double completeness_error() const;
};

/// Kraus operators for one side. Requires 0 <= z <= 1/3.
KrausChannel build_kraus(Side side, double z);

struct LocalUnitary {
  ComplexMatrix matrix;  // 8x8 on the side's three qubits
  Side side = Side::A;
  double z = 0.0;

  double unitarity_error() const;  // max of |U^dagger U - I|, |U U^dagger - I|
};

/// Largest |<Psi_l|Phi_l>| of the product decomposition at z.
double factor_overlap(double z);

/// Throws ProtocolUnavailable when the factors at z are not orthogonal
/// (residual above 1e-8), DomainError when z is outside [0, 1/3].
LocalUnitary build_unitary(Side side, double z);

struct Certification {
  correlations::CorrelationReport correlations;
  witness::WitnessReport witness;

  double discord() const { return correlations.discord; }
  double geometric_discord() const { return correlations.geometric_discord.value_or(0.0); }
  double concurrence() const { return correlations.concurrence.value_or(0.0); }
  double negativity() const { return correlations.negativity; }
  std::size_t rank() const { return witness.rank; }
};

Certification certify(const DensityMatrix& two_qubit_state, const correlations::OptimizerOptions& opts = {});

struct ProtocolResult {
  double z = 0.0;
  DensityMatrix initial;
  DensityMatrix post_operation;
  DensityMatrix final_state;  // legs [2, 2]
  DensityMatrix target;       // werner(z)
  double trace_distance_to_target = 0.0;
  Certification certification;

  bool passed(double tol = kEndToEndTol) const { return trace_distance_to_target <= tol; }
};

Certification certify(const ProtocolResult& result, const correlations::OptimizerOptions& opts = {});

/// Joint operator M_A^i (x) M_B^i on legs [A1, A2, B1, B2], built as the
/// product of the two one-sided operators each embedded on its own legs.
ComplexMatrix joint_kraus_operator(const KrausChannel& a, const KrausChannel& b, std::size_t i);

ProtocolResult run_kraus_protocol(double z, const correlations::OptimizerOptions& opts = {});
ProtocolResult run_unitary_protocol(double z, const correlations::OptimizerOptions& opts = {});

/// The state the unitary protocol should produce before the partial trace:
/// (1/8) sum_mn |mn><mn| Psi Psi (x) |mn><mn| Phi Phi + (Psi <-> Phi), legs
/// [A1, A2, A3, B1, B2, B3].
ComplexMatrix unitary_branch_mixture(double z);

/// For outcome (m, n) on both A1A2 and B1B2, the normalized A3B3 block of
/// `post_operation`, which should equal
/// (1/2)[Psi_l Psi_l (x) Phi_l Phi_l + Phi_l Phi_l (x) Psi_l Psi_l], l = 2m + n.
ComplexMatrix branch_block(const DensityMatrix& post_operation, std::size_t m, std::size_t n);

}  // namespace qdiss::protocols

#pragma once

// Constructors for the state families used by the dissonance protocols:
// classical-classical and classical-quantum states, Bell states, two-qubit
// Werner states, and the four-term product decomposition of separable Werner
// states.

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "qdiss/qla.hpp"

namespace qdiss::states {

using qla::Complex;
using qla::ComplexMatrix;
using qla::DensityMatrix;
using qla::PureState;

// Upper end of the separable Werner range.
inline constexpr double kSeparableBound = 1.0 / 3.0;

enum class Bell { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

Bell parse_bell(std::string_view name);
std::string_view bell_name(Bell which);

// Computational basis of a d-level system.
std::vector<PureState> computational_basis(std::size_t d);
// Orthonormal qubit basis whose first vector points along Bloch angles (theta, phi).
std::vector<PureState> qubit_basis(double theta, double phi);
// Qubit density matrix (I + r.sigma)/2; requires |r| <= 1.
DensityMatrix qubit_state(double x, double y, double z);

/// sum_ij p_ij |alpha_i><alpha_i| (x) |beta_j><beta_j|, legs [d_A, d_B].
/// `p` is d_A x d_B (row index on A). Throws DomainError for negative or
/// unnormalized probabilities and for non-orthonormal bases.
DensityMatrix cc_state(const std::vector<std::vector<double>>& p, const std::vector<PureState>& basis_a,
                       const std::vector<PureState>& basis_b);

/// sum_i p_i |alpha_i><alpha_i| (x) rho_B^(i).
DensityMatrix cq_state(const std::vector<double>& p, const std::vector<PureState>& basis_a,
                       const std::vector<DensityMatrix>& states_b);

PureState bell(Bell which);

/// z |Psi-><Psi-| + (1 - z)/4 I, z in [0, 1].
DensityMatrix werner(double z);

struct PhaseSolution {
  std::array<double, 4> theta{};

  // |e^{-2i t1}(1+3z) + (e^{-2i t2} + e^{-2i t3} + e^{-2i t4})(1-z)|
  double residual(double z) const;
};

/// Phases for the product decomposition. theta1 = 0, theta2 = pi/2, and
/// theta3, theta4 on the branch with sin t3 = sin t4 > 0, cos t4 = -cos t3 >= 0.
/// Requires 0 <= z <= 1/3.
PhaseSolution solve_phases(double z);

/// The four unnormalized vectors eta_j (norm 1/2) whose projectors sum to
/// werner(z). Requires 0 <= z <= 1/3.
std::array<PureState, 4> eta_states(double z);

struct ProductFactors {
  PureState first;   // factor on the first qubit
  PureState second;  // factor on the second qubit
  // v = scale * phase * first (x) second, with |phase| = 1 and scale >= 0.
  Complex phase{1.0, 0.0};
  double scale = 1.0;
  // Second Schmidt coefficient of the normalized input; zero iff v is a product.
  double residual = 0.0;
};

inline constexpr double kProductTol = 1e-8;

/// Rank-1 factorization of a two-qubit vector via its 2x2 coefficient matrix.
/// Each factor is normalized with its first nonzero amplitude real-positive.
/// With `strict`, a residual above 1e-8 throws DomainError ("not a product state").
ProductFactors factor_pure(const PureState& v, bool strict = false);

struct FactorPair {
  PureState psi;
  PureState phi;
};

/// The closed-form factors (Psi_j, Phi_j) at z = 1/3, exactly as tabulated,
/// including their explicit global phases.
std::array<FactorPair, 4> explicit_factors_z13();

struct ProductDecomposition {
  double z = 0.0;
  PhaseSolution phases;
  std::array<PureState, 4> etas;
  // eta_j = (1/2) phase_j * psi_j (x) phi_j
  std::array<ProductFactors, 4> factors;

  ComplexMatrix reconstruction() const;  // sum_j |eta_j><eta_j|
  double max_residual() const;
  const PureState& psi(std::size_t j) const { return factors[j].first; }
  const PureState& phi(std::size_t j) const { return factors[j].second; }
};

/// Composes solve_phases, eta_states and a strict factor_pure of each eta_j.
/// Throws DomainError for z outside [0, 1/3] or if some eta_j does not factor.
ProductDecomposition product_decomposition(double z);

/// k perfectly classically correlated qubit pairs, (1/2 sum_i |ii><ii|)^{(x)k},
/// with legs ordered [A_1..A_k, B_1..B_k]. k must be 2 or 3.
DensityMatrix cc_pairs(std::size_t k);

// max-abs distance between a and b after removing the best relative phase.
double distance_up_to_phase(const PureState& a, const PureState& b);

}  // namespace qdiss::states

#pragma once

// Correlation quantifiers for bipartite states. Entropies are in bits.
//
// Classical correlation and discord are taken with respect to rank-1
// projective measurements on the first subsystem, which must be a qubit.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "qdiss/qla.hpp"

namespace qdiss::correlations {

using qla::ComplexMatrix;
using qla::DensityMatrix;

/// Projective qubit measurement along the Bloch direction (theta, phi).
class Measurement {
 public:
  static Measurement qubit(double theta, double phi);

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  std::array<double, 3> direction() const;
  // Outcome vectors |psi_0>, |psi_1>.
  const std::array<std::array<qla::Complex, 2>, 2>& vectors() const { return vectors_; }
  std::array<ComplexMatrix, 2> projectors() const;

 private:
  Measurement(double theta, double phi);
  double theta_;
  double phi_;
  std::array<std::array<qla::Complex, 2>, 2> vectors_;
};

struct OptimizerOptions {
  std::size_t grid_theta = 64;
  std::size_t grid_phi = 128;
  double angle_tol = 1e-7;
  std::size_t refine_starts = 3;
  std::size_t max_iterations = 2000;
};

inline constexpr double kOutcomeFloor = 1e-14;

double entropy(const DensityMatrix& rho);
// -sum lambda log2 lambda over a spectrum, clipping [-1e-10, 0) to zero.
double entropy_of_spectrum(const std::vector<double>& spectrum);

/// S(rho_A) + S(rho_B) - S(rho_AB); requires exactly two legs.
double total_correlation(const DensityMatrix& rho);

struct MeasurementOutcome {
  std::vector<double> probabilities;
  std::vector<DensityMatrix> conditional_states;  // rho_{B|a}; empty slot skipped when p_a < 1e-14
  double conditional_entropy = 0.0;               // sum_a p_a S(rho_{B|a})
};

MeasurementOutcome measure_first(const DensityMatrix& rho, const Measurement& m);
double conditional_entropy_after(const DensityMatrix& rho, const Measurement& m);

struct ClassicalCorrelation {
  double value;
  Measurement argmin;
  double min_conditional_entropy;
};

/// S(rho_B) minus the minimal post-measurement conditional entropy. The
/// minimum is found with a (theta, phi) grid followed by Nelder-Mead from the
/// best few grid points. Deterministic.
ClassicalCorrelation classical_correlation(const DensityMatrix& rho, const OptimizerOptions& opts = {});

struct CorrelationReport {
  double total = 0.0;
  double classical = 0.0;
  double discord = 0.0;
  std::optional<double> geometric_discord;  // two-qubit states only
  std::optional<double> concurrence;        // two-qubit states only
  double negativity = 0.0;
  Measurement argmin_measurement = Measurement::qubit(0.0, 0.0);
  std::vector<double> outcome_probs;
  std::vector<DensityMatrix> conditional_states;
};

/// Full correlation report; requires legs [2, d_B].
CorrelationReport discord(const DensityMatrix& rho, const OptimizerOptions& opts = {});

/// Hilbert-Schmidt geometric discord (measured on A) of a two-qubit state,
/// from its local Bloch vector x and correlation tensor T:
/// (|x|^2 + |T|^2 - k_max) / 4, with k_max the top eigenvalue of x x^T + T T^T.
double geometric_discord(const DensityMatrix& rho);

struct GeometricSearch {
  double value;
  Measurement basis;  // optimal classical basis on A
};

/// Direct minimization of Tr[(rho - chi)^2] over zero-discord states
/// chi = sum_i |psi_i><psi_i| (x) sigma_i. For a fixed basis the optimal
/// sigma_i is the diagonal block <psi_i|rho|psi_i>; the basis is searched
/// like the discord optimizer.
GeometricSearch geometric_discord_search(const DensityMatrix& rho, const OptimizerOptions& opts = {});

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

/// Sum of |negative eigenvalues| of the partial transpose on the second leg.
double negativity(const DensityMatrix& rho);

/// Minimizes f over the Bloch sphere: grid plus Nelder-Mead refinement.
/// Exposed for reuse by other searches over measurement directions.
struct SphereMinimum {
  double value;
  double theta;
  double phi;
};
template <typename F>
SphereMinimum minimize_on_sphere(F&& f, const OptimizerOptions& opts);

}  // namespace qdiss::correlations

#include "qdiss/detail/sphere_search.hpp"

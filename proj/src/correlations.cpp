#include "qdiss/correlations.hpp"

#include <cmath>
#include <string>

namespace qdiss::correlations {

using qla::Complex;

namespace {

void require_bipartite(const DensityMatrix& rho, const char* what) {
  if (rho.legs().size() != 2) {
    throw DomainError(std::string(what) + " needs a bipartite state with exactly two legs (merge legs first)");
  }
}

void require_qubit_first(const DensityMatrix& rho, const char* what) {
  require_bipartite(rho, what);
  if (rho.legs()[0] != 2) throw DomainError(std::string(what) + " needs a qubit as the measured (first) subsystem");
}

void require_two_qubits(const DensityMatrix& rho, const char* what) {
  if (rho.legs() != qla::Legs{2, 2}) throw DomainError(std::string(what) + " is defined for two-qubit states only");
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

double clipped(double lam) {
  if (lam < -qla::kPsdClip) throw DomainError("negative eigenvalue " + std::to_string(lam) + " in entropy");
  return std::max(lam, 0.0);
}

// (<psi| (x) I) rho (|psi> (x) I) for a qubit first leg, dimension d_B.
ComplexMatrix project_first(const ComplexMatrix& rho, std::size_t db, const std::array<Complex, 2>& psi) {
  ComplexMatrix out(db, db);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const Complex w = std::conj(psi[i]) * psi[j];
      for (std::size_t b = 0; b < db; ++b) {
        for (std::size_t c = 0; c < db; ++c) out(b, c) += w * rho(i * db + b, j * db + c);
      }
    }
  }
  return out;
}

// (<psi_i| (x) I) rho (|psi_j> (x) I)
ComplexMatrix block(const ComplexMatrix& rho, std::size_t db, const std::array<Complex, 2>& left,
                    const std::array<Complex, 2>& right) {
  ComplexMatrix out(db, db);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const Complex w = std::conj(left[i]) * right[j];
      for (std::size_t b = 0; b < db; ++b) {
        for (std::size_t c = 0; c < db; ++c) out(b, c) += w * rho(i * db + b, j * db + c);
      }
    }
  }
  return out;
}

// Entropy of m / p for a Hermitian PSD block m with trace p.
double block_entropy(const ComplexMatrix& m, double p) {
  if (m.rows() == 2) {
    const double a = m(0, 0).real() / p;
    const double d = m(1, 1).real() / p;
    const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)) / (p * p));
    const double mean = 0.5 * (a + d);
    return -xlog2x(clipped(mean + half_gap)) - xlog2x(clipped(mean - half_gap));
  }
  ComplexMatrix scaled = m;
  scaled *= 1.0 / p;
  return entropy_of_spectrum(qla::eigenvalues(scaled));
}

double conditional_entropy_fast(const ComplexMatrix& rho, std::size_t db, const Measurement& m) {
  double s = 0.0;
  for (const auto& psi : m.vectors()) {
    const ComplexMatrix blk = project_first(rho, db, psi);
    const double p = blk.trace().real();
    if (p < kOutcomeFloor) continue;
    s += p * block_entropy(blk, p);
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Measurement

Measurement::Measurement(double theta, double phi) : theta_(theta), phi_(phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  vectors_ = {{{c, e * s}, {s, -e * c}}};
}

Measurement Measurement::qubit(double theta, double phi) { return Measurement(theta, phi); }

std::array<double, 3> Measurement::direction() const {
  return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_), std::cos(theta_)};
}

std::array<ComplexMatrix, 2> Measurement::projectors() const {
  return {ComplexMatrix::outer(vectors_[0], vectors_[0]), ComplexMatrix::outer(vectors_[1], vectors_[1])};
}

// ---------------------------------------------------------------------------
// entropies

double entropy_of_spectrum(const std::vector<double>& spectrum) {
  double s = 0.0;
  for (double lam : spectrum) s -= xlog2x(clipped(lam));
  return s;
}

double entropy(const DensityMatrix& rho) { return entropy_of_spectrum(qla::eigenvalues(rho.matrix())); }

double total_correlation(const DensityMatrix& rho) {
  require_bipartite(rho, "total_correlation");
  const std::size_t a[] = {0};
  const std::size_t b[] = {1};
  return entropy(qla::partial_trace(rho, b)) + entropy(qla::partial_trace(rho, a)) - entropy(rho);
}

MeasurementOutcome measure_first(const DensityMatrix& rho, const Measurement& m) {
  require_qubit_first(rho, "measure_first");
  const std::size_t db = rho.legs()[1];
  MeasurementOutcome out;
  for (const auto& psi : m.vectors()) {
    ComplexMatrix blk = project_first(rho.matrix(), db, psi);
    const double p = blk.trace().real();
    out.probabilities.push_back(p);
    if (p < kOutcomeFloor) continue;
    out.conditional_entropy += p * block_entropy(blk, p);
    blk *= 1.0 / p;
    // Restore exact Hermiticity lost to rounding in the contraction.
    ComplexMatrix sym = blk + blk.adjoint();
    sym *= 0.5;
    out.conditional_states.emplace_back(std::move(sym), qla::Legs{db});
  }
  return out;
}

double conditional_entropy_after(const DensityMatrix& rho, const Measurement& m) {
  require_qubit_first(rho, "conditional_entropy_after");
  return conditional_entropy_fast(rho.matrix(), rho.legs()[1], m);
}

ClassicalCorrelation classical_correlation(const DensityMatrix& rho, const OptimizerOptions& opts) {
  require_qubit_first(rho, "classical_correlation");
  const std::size_t db = rho.legs()[1];
  const ComplexMatrix& mat = rho.matrix();
  auto objective = [&](double theta, double phi) {
    return conditional_entropy_fast(mat, db, Measurement::qubit(theta, phi));
  };
  const SphereMinimum best = minimize_on_sphere(objective, opts);
  const std::size_t a[] = {0};
  const double s_b = entropy(qla::partial_trace(rho, a));
  return {s_b - best.value, Measurement::qubit(best.theta, best.phi), best.value};
}

CorrelationReport discord(const DensityMatrix& rho, const OptimizerOptions& opts) {
  require_qubit_first(rho, "discord");
  CorrelationReport r;
  r.total = total_correlation(rho);
  const auto cc = classical_correlation(rho, opts);
  r.classical = cc.value;
  r.discord = r.total - r.classical;
  r.argmin_measurement = cc.argmin;
  auto outcome = measure_first(rho, cc.argmin);
  r.outcome_probs = std::move(outcome.probabilities);
  r.conditional_states = std::move(outcome.conditional_states);
  r.negativity = negativity(rho);
  if (rho.legs()[1] == 2) {
    r.geometric_discord = geometric_discord(rho);
    r.concurrence = concurrence(rho);
  }
  return r;
}

// ---------------------------------------------------------------------------
// geometric discord

namespace {

const std::array<ComplexMatrix, 3>& paulis() {
  static const std::array<ComplexMatrix, 3> p{
      ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
      ComplexMatrix{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}},
      ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}},
  };
  return p;
}

}  // namespace

double geometric_discord(const DensityMatrix& rho) {
  require_two_qubits(rho, "geometric_discord");
  const auto& s = paulis();
  const auto id = ComplexMatrix::identity(2);
  std::array<double, 3> x{};
  std::array<std::array<double, 3>, 3> t{};
  for (std::size_t i = 0; i < 3; ++i) {
    x[i] = (rho.matrix() * qla::tensor(s[i], id)).trace().real();
    for (std::size_t j = 0; j < 3; ++j) t[i][j] = (rho.matrix() * qla::tensor(s[i], s[j])).trace().real();
  }
  ComplexMatrix k(3, 3);
  double norm_x = 0.0;
  double norm_t = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    norm_x += x[i] * x[i];
    for (std::size_t j = 0; j < 3; ++j) {
      norm_t += t[i][j] * t[i][j];
      double kij = x[i] * x[j];
      for (std::size_t l = 0; l < 3; ++l) kij += t[i][l] * t[j][l];
      k(i, j) = kij;
    }
  }
  const double k_max = qla::eigenvalues(k).front();
  return std::max(0.0, 0.25 * (norm_x + norm_t - k_max));
}

GeometricSearch geometric_discord_search(const DensityMatrix& rho, const OptimizerOptions& opts) {
  require_qubit_first(rho, "geometric_discord_search");
  const std::size_t db = rho.legs()[1];
  const ComplexMatrix& mat = rho.matrix();
  auto objective = [&](double theta, double phi) {
    const auto m = Measurement::qubit(theta, phi);
    const auto& v = m.vectors();
    const auto proj = m.projectors();
    ComplexMatrix chi(mat.rows(), mat.cols());
    for (std::size_t i = 0; i < 2; ++i) chi += qla::tensor(proj[i], block(mat, db, v[i], v[i]));
    const ComplexMatrix diff = mat - chi;
    return (diff * diff).trace().real();
  };
  const SphereMinimum best = minimize_on_sphere(objective, opts);
  return {best.value, Measurement::qubit(best.theta, best.phi)};
}

// ---------------------------------------------------------------------------
// entanglement

double concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho, "concurrence");
  const ComplexMatrix yy = qla::tensor(paulis()[1], paulis()[1]);
  const ComplexMatrix flipped = yy * rho.matrix().conj() * yy;
  const ComplexMatrix root = qla::matrix_sqrt(rho.matrix());
  ComplexMatrix inner = root * flipped * root;
  inner = 0.5 * (inner + inner.adjoint());
  const auto lam = qla::eigenvalues(qla::matrix_sqrt(inner));
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double negativity(const DensityMatrix& rho) {
  require_bipartite(rho, "negativity");
  const std::size_t b[] = {1};
  double n = 0.0;
  for (double lam : qla::eigenvalues(qla::partial_transpose(rho.matrix(), rho.legs(), b))) n += std::max(0.0, -lam);
  return n;
}

}  // namespace qdiss::correlations

#include "qdiss/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qdiss::states {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_orthonormal(const std::vector<PureState>& basis, const char* which) {
  if (basis.empty()) throw DomainError(std::string(which) + " basis is empty");
  const std::size_t d = basis.front().dim();
  if (basis.size() != d) throw DomainError(std::string(which) + " basis must have as many vectors as its dimension");
  for (std::size_t i = 0; i < d; ++i) {
    if (basis[i].dim() != d) throw DomainError(std::string(which) + " basis vectors have mixed dimensions");
    for (std::size_t j = 0; j < d; ++j) {
      const Complex ov = qla::inner(basis[i].amplitudes(), basis[j].amplitudes());
      if (std::abs(ov - (i == j ? 1.0 : 0.0)) > 1e-10) {
        throw DomainError(std::string(which) + " basis is not orthonormal");
      }
    }
  }
}

void require_distribution(double total, bool any_negative) {
  if (any_negative) throw DomainError("probabilities must be non-negative");
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("probabilities must sum to 1 (got " + std::to_string(total) + ")");
}

void require_separable_range(double z) {
  if (!(z >= 0.0 && z <= kSeparableBound + 1e-12)) {
    throw DomainError("z = " + std::to_string(z) + " is outside the separable Werner range [0, 1/3]");
  }
}

PureState qubit(Complex a0, Complex a1) { return PureState({a0, a1}, {2}); }

// Index of the first amplitude whose magnitude is above noise.
std::size_t first_nonzero(std::span<const Complex> v) {
  double big = 0.0;
  for (const auto& x : v) big = std::max(big, std::abs(x));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-10 * big) return i;
  }
  return 0;
}

}  // namespace

Bell parse_bell(std::string_view name) {
  if (name == "psi+" || name == "psi-plus") return Bell::PsiPlus;
  if (name == "psi-" || name == "psi-minus" || name == "singlet") return Bell::PsiMinus;
  if (name == "phi+" || name == "phi-plus") return Bell::PhiPlus;
  if (name == "phi-" || name == "phi-minus") return Bell::PhiMinus;
  throw DomainError("unknown Bell state '" + std::string(name) + "' (expected psi+, psi-, phi+ or phi-)");
}

std::string_view bell_name(Bell which) {
  switch (which) {
    case Bell::PsiPlus: return "psi+";
    case Bell::PsiMinus: return "psi-";
    case Bell::PhiPlus: return "phi+";
    case Bell::PhiMinus: return "phi-";
  }
  return "?";
}

std::vector<PureState> computational_basis(std::size_t d) {
  std::vector<PureState> basis;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Complex> v(d);
    v[i] = 1.0;
    basis.emplace_back(std::move(v), qla::Legs{d});
  }
  return basis;
}

std::vector<PureState> qubit_basis(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  return {qubit(c, e * s), qubit(s, -e * c)};
}

DensityMatrix qubit_state(double x, double y, double z) {
  if (x * x + y * y + z * z > 1.0 + 1e-12) throw DomainError("Bloch vector longer than 1");
  return DensityMatrix(ComplexMatrix{{0.5 * (1.0 + z), 0.5 * Complex(x, -y)}, {0.5 * Complex(x, y), 0.5 * (1.0 - z)}},
                       {2});
}

DensityMatrix cc_state(const std::vector<std::vector<double>>& p, const std::vector<PureState>& basis_a,
                       const std::vector<PureState>& basis_b) {
  require_orthonormal(basis_a, "A");
  require_orthonormal(basis_b, "B");
  const std::size_t da = basis_a.size();
  const std::size_t db = basis_b.size();
  if (p.size() != da) throw DomainError("probability table must have d_A rows");
  double total = 0.0;
  bool negative = false;
  for (const auto& row : p) {
    if (row.size() != db) throw DomainError("probability table must have d_B columns");
    for (double x : row) {
      total += x;
      negative |= x < 0.0;
    }
  }
  require_distribution(total, negative);

  ComplexMatrix rho(da * db, da * db);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < db; ++j) {
      if (p[i][j] == 0.0) continue;
      rho += p[i][j] * qla::tensor(basis_a[i].projector(), basis_b[j].projector());
    }
  }
  return DensityMatrix(std::move(rho), {da, db});
}

DensityMatrix cq_state(const std::vector<double>& p, const std::vector<PureState>& basis_a,
                       const std::vector<DensityMatrix>& states_b) {
  require_orthonormal(basis_a, "A");
  const std::size_t da = basis_a.size();
  if (p.size() != da || states_b.size() != da) throw DomainError("cq_state needs one probability and one B state per basis vector");
  double total = 0.0;
  bool negative = false;
  for (double x : p) {
    total += x;
    negative |= x < 0.0;
  }
  require_distribution(total, negative);
  const std::size_t db = states_b.front().dim();
  for (const auto& s : states_b) {
    if (s.dim() != db) throw DomainError("cq_state: B states have mixed dimensions");
  }

  ComplexMatrix rho(da * db, da * db);
  for (std::size_t i = 0; i < da; ++i) rho += p[i] * qla::tensor(basis_a[i].projector(), states_b[i].matrix());
  return DensityMatrix(std::move(rho), {da, db});
}

PureState bell(Bell which) {
  const double r = std::numbers::sqrt2 / 2.0;
  switch (which) {
    case Bell::PsiPlus: return PureState({0.0, r, r, 0.0}, {2, 2});
    case Bell::PsiMinus: return PureState({0.0, r, -r, 0.0}, {2, 2});
    case Bell::PhiPlus: return PureState({r, 0.0, 0.0, r}, {2, 2});
    case Bell::PhiMinus: return PureState({r, 0.0, 0.0, -r}, {2, 2});
  }
  throw DomainError("unknown Bell state");
}

DensityMatrix werner(double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("Werner parameter z = " + std::to_string(z) + " is outside [0, 1]");
  ComplexMatrix rho = z * bell(Bell::PsiMinus).projector();
  rho += ComplexMatrix::identity(4) * Complex((1.0 - z) / 4.0);
  return DensityMatrix(std::move(rho), {2, 2});
}

double PhaseSolution::residual(double z) const {
  auto e = [&](std::size_t l) { return std::polar(1.0, -2.0 * theta[l]); };
  return std::abs(e(0) * (1.0 + 3.0 * z) + (e(1) + e(2) + e(3)) * (1.0 - z));
}

PhaseSolution solve_phases(double z) {
  require_separable_range(z);
  const double cos3 = std::sqrt(std::max(0.0, (1.0 - 3.0 * z) / (2.0 * (1.0 - z))));
  const double sin3 = std::sqrt((1.0 + z) / (2.0 * (1.0 - z)));
  return PhaseSolution{{0.0, std::numbers::pi / 2.0, std::atan2(sin3, cos3), std::atan2(sin3, -cos3)}};
}

std::array<PureState, 4> eta_states(double z) {
  const auto phases = solve_phases(z);
  const double a = std::sqrt(1.0 + 3.0 * z) / 2.0;
  const double b = std::sqrt(1.0 - z) / 2.0;
  const std::array<PureState, 4> x{
      bell(Bell::PsiMinus).scaled(a / kI),
      bell(Bell::PsiPlus).scaled(b),
      bell(Bell::PhiMinus).scaled(b),
      bell(Bell::PhiPlus).scaled(b / kI),
  };
  constexpr int kSigns[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};

  auto make = [&](std::size_t j) {
    std::vector<Complex> v(4);
    for (std::size_t l = 0; l < 4; ++l) {
      const Complex coeff = 0.5 * static_cast<double>(kSigns[j][l]) * std::polar(1.0, phases.theta[l]);
      for (std::size_t i = 0; i < 4; ++i) v[i] += coeff * x[l][i];
    }
    return PureState(std::move(v), {2, 2}, false);
  };
  return {make(0), make(1), make(2), make(3)};
}

ProductFactors factor_pure(const PureState& v, bool strict) {
  if (v.dim() != 4) throw DomainError("factor_pure expects a two-qubit vector");
  const double n = v.norm();
  if (n == 0.0) throw DomainError("factor_pure: zero vector");

  ComplexMatrix c{{v[0] / n, v[1] / n}, {v[2] / n, v[3] / n}};
  const auto eig = qla::hermitian_eig(c * c.adjoint());
  const double sigma1 = std::sqrt(std::max(eig.values[0], 0.0));
  const double det = std::abs(c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0));
  const double sigma2 = det / sigma1;

  std::vector<Complex> u{eig.vectors(0, 0), eig.vectors(1, 0)};
  // c ~ sigma1 u w with w = u^dagger c / sigma1
  std::vector<Complex> w{(std::conj(u[0]) * c(0, 0) + std::conj(u[1]) * c(1, 0)) / sigma1,
                         (std::conj(u[0]) * c(0, 1) + std::conj(u[1]) * c(1, 1)) / sigma1};

  auto fix_phase = [](std::vector<Complex>& f) {
    const std::size_t k = first_nonzero(f);
    const Complex ph = f[k] / std::abs(f[k]);
    for (auto& x : f) x /= ph;
    f[k] = f[k].real();
    const double nrm = qla::norm(f);
    for (auto& x : f) x /= nrm;
    return ph;
  };
  const Complex pu = fix_phase(u);
  const Complex pw = fix_phase(w);

  if (strict && sigma2 > kProductTol) {
    throw DomainError("not a product state (second Schmidt coefficient " + std::to_string(sigma2) + ")");
  }
  return ProductFactors{PureState(std::move(u), {2}), PureState(std::move(w), {2}), pu * pw, n * sigma1, sigma2};
}

std::array<FactorPair, 4> explicit_factors_z13() {
  const double r3 = std::sqrt(3.0);
  const double kappa = std::sqrt((3.0 + r3) / 12.0);
  const double kappa_bar = std::sqrt((3.0 - r3) / 12.0);
  const Complex up = kappa * kI;          // kappa e^{i pi/2}
  const Complex down = -kappa_bar * kI;   // kappa_bar e^{-i pi/2}
  return {
      FactorPair{qubit(up * (1.0 - r3), -up * (1.0 + kI)), qubit(kappa * (kI - 1.0), kappa * (r3 - 1.0))},
      FactorPair{qubit(up * (1.0 - r3), up * (1.0 + kI)), qubit(kappa * (1.0 - kI), kappa * (r3 - 1.0))},
      FactorPair{qubit(down * (r3 + 1.0), down * (1.0 - kI)), qubit(-kappa_bar * (1.0 + kI), kappa_bar * (r3 + 1.0))},
      FactorPair{qubit(down * (r3 + 1.0), down * (kI - 1.0)), qubit(kappa_bar * (1.0 + kI), kappa_bar * (r3 + 1.0))},
  };
}

ComplexMatrix ProductDecomposition::reconstruction() const {
  ComplexMatrix sum(4, 4);
  for (const auto& eta : etas) sum += eta.projector();
  return sum;
}

double ProductDecomposition::max_residual() const {
  double r = 0.0;
  for (const auto& f : factors) r = std::max(r, f.residual);
  return r;
}

ProductDecomposition product_decomposition(double z) {
  auto etas = eta_states(z);
  std::array<ProductFactors, 4> factors{factor_pure(etas[0], true), factor_pure(etas[1], true),
                                        factor_pure(etas[2], true), factor_pure(etas[3], true)};
  return ProductDecomposition{z, solve_phases(z), std::move(etas), std::move(factors)};
}

DensityMatrix cc_pairs(std::size_t k) {
  if (k != 2 && k != 3) throw DomainError("cc_pairs supports k = 2 or 3 (got " + std::to_string(k) + ")");
  const auto basis = computational_basis(2);
  const DensityMatrix pair = cc_state({{0.5, 0.0}, {0.0, 0.5}}, basis, basis);
  DensityMatrix rho = pair;
  for (std::size_t j = 1; j < k; ++j) rho = qla::tensor(rho, pair);
  // [A1, B1, A2, B2, ...] -> [A1, A2, ..., B1, B2, ...]
  std::vector<std::size_t> perm;
  for (std::size_t j = 0; j < k; ++j) perm.push_back(2 * j);
  for (std::size_t j = 0; j < k; ++j) perm.push_back(2 * j + 1);
  return qla::permute_legs(rho, perm);
}

double distance_up_to_phase(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw DomainError("distance_up_to_phase: dimension mismatch");
  const Complex ov = qla::inner(b.amplitudes(), a.amplitudes());
  const Complex ph = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex(1.0);
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - ph * b[i]));
  return m;
}

}  // namespace qdiss::states

#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qcontext/matrix.hpp"

namespace qcontext {

/// Unit vector in C^dim.
class PureState {
 public:
  /// Throws InvalidValueError unless sum |a_i|^2 = 1 within tol::kNorm.
  explicit PureState(ComplexVector amplitudes);
  /// Scales the input to unit norm. Throws on the zero vector.
  static PureState normalized(ComplexVector amplitudes);
  /// Computational basis vector |index>.
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }

  ComplexMatrix projector() const { return ComplexMatrix::outer(amplitudes_); }

 private:
  ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityOperator {
 public:
  /// Validates hermiticity (1e-9), trace (1e-10) and positivity (-1e-9).
  explicit DensityOperator(ComplexMatrix matrix);
  static DensityOperator from_pure(const PureState& psi);
  static DensityOperator maximally_mixed(std::size_t dim);

  std::size_t dim() const { return matrix_.dim(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  /// Tr(w^2)
  double purity() const;
  /// Tr(w a)
  Complex expectation(const ComplexMatrix& a) const;

 private:
  ComplexMatrix matrix_;
};

/// psi = sum_i c_i left_i (x) right_i with c descending. The lists hold
/// min(d1, d2) terms; trailing coefficients may be zero.
struct SchmidtDecomposition {
  std::vector<double> coefficients;
  std::vector<ComplexVector> left_basis;
  std::vector<ComplexVector> right_basis;
  BipartiteDims dims;

  /// Number of coefficients above tol::kSchmidtRank.
  std::size_t rank() const;
  ComplexVector reconstruct() const;
};

SchmidtDecomposition schmidt(const PureState& psi, BipartiteDims dims);

/// |<psi|phi>|^2
double fidelity(const PureState& psi, std::span<const Complex> phi);

struct ProductFactors {
  PureState first;
  PureState second;
};

struct ProductCheck {
  bool is_product;
  std::size_t schmidt_rank;
  /// Present iff is_product; first (x) second reproduces psi exactly.
  std::optional<ProductFactors> factors;
};

ProductCheck is_product(const PureState& psi, BipartiteDims dims);

/// Partial trace keeping `kept`.
DensityOperator reduced_state(const DensityOperator& w, BipartiteDims dims, Subsystem kept);

/// (|01> - |10>)/sqrt(2)
PureState make_singlet();
/// (|000> + |111>)/sqrt(2)
PureState make_ghz();
PureState make_product(const PureState& a, const PureState& b);

/// Spin-1/2 component operators (hbar = 1), i.e. Pauli matrices / 2.
namespace spin {
ComplexMatrix sx();
ComplexMatrix sy();
ComplexMatrix sz();
/// (S_1 + S_2)^2 on two spin-1/2 systems.
ComplexMatrix total_squared();
}  // namespace spin

/// <S^2> in units of hbar^2. Requires dim 4.
double total_spin_squared(const DensityOperator& w);

struct NonInteractingCheck {
  bool noninteracting;
  /// max |h - (h1 (x) I + I (x) h2)| entry.
  double residual;
  /// Present iff noninteracting. h1 carries the full trace, h2 is traceless.
  std::optional<std::pair<ComplexMatrix, ComplexMatrix>> parts;
};

NonInteractingCheck is_noninteracting(const ComplexMatrix& h, BipartiteDims dims);

/// sigma_z (x) I + I (x) sigma_z + g sigma_x (x) sigma_x
ComplexMatrix entangling_hamiltonian(double coupling);

struct EvolutionSample {
  double time;
  std::vector<double> coefficients;
  std::size_t rank;
};

/// Evolves |00> under entangling_hamiltonian(coupling) and records the
/// Schmidt coefficients at each time.
std::vector<EvolutionSample> entangling_evolution(double coupling, std::span<const double> times);

}  // namespace qcontext

#pragma once

#include <span>
#include <string>
#include <vector>

#include "qcontext/matrix.hpp"
#include "qcontext/spectral.hpp"
#include "qcontext/states.hpp"

namespace qcontext {

/// Hermitian operator together with its spectral resolution. The label is
/// carried for reports only.
class Observable {
 public:
  explicit Observable(ComplexMatrix matrix, std::string label = {});

  const ComplexMatrix& matrix() const { return matrix_; }
  const SpectralDecomposition& spectrum() const { return spectrum_; }
  const std::string& label() const { return label_; }
  std::size_t dim() const { return matrix_.dim(); }
  /// Every spectral projector has rank 1.
  bool non_degenerate() const;

 private:
  ComplexMatrix matrix_;
  SpectralDecomposition spectrum_;
  std::string label_;
};

/// The pair (W, A).
class MeasurementContext {
 public:
  MeasurementContext(DensityOperator initial_state, Observable observable);

  const DensityOperator& initial_state() const { return initial_state_; }
  const Observable& observable() const { return observable_; }

 private:
  DensityOperator initial_state_;
  Observable observable_;
};

struct OutcomeProbability {
  double eigenvalue;
  double probability;
};

/// W_A conditioned on its context, with Born probabilities Tr(W P_i).
struct ContextualState {
  DensityOperator state;
  MeasurementContext context;
  std::vector<OutcomeProbability> outcome_probabilities;
};

/// Born probabilities Tr(w P_i) over a's spectral projectors.
std::vector<OutcomeProbability> outcome_distribution(const DensityOperator& w, const Observable& a);

/// sum_i P_i w P_i
DensityOperator luders_map(const DensityOperator& w, const Observable& a);

/// Non-sorting Lueders conditionalization W -> W_A = sum_i P_i W P_i.
ContextualState luders_nonselective(const MeasurementContext& ctx);

/// sum_i |<a_i|psi>|^2 |a_i><a_i| over the eigenvectors of a non-degenerate a.
/// Throws UnsupportedCaseError for degenerate a.
DensityOperator luders_pure_nondegenerate(const PureState& psi, const Observable& a);

struct SupportVector {
  double eigenvalue;
  /// |c_i| = |<psi, a_i>|
  double amplitude;
};

struct RepresentativeReport {
  bool eigenvectors_of_observable;  // (i)
  bool mutually_orthogonal;         // (ii)
  bool non_orthogonal_to_state;     // (iii)
  std::vector<SupportVector> support;
  /// Eigenvalues whose eigenvectors have zero amplitude in psi.
  std::vector<double> excluded;
  /// Trace distance between W_A and sum |c_i|^2 |a_i><a_i|.
  double representation_deviation;

  bool all_hold() const {
    return eigenvectors_of_observable && mutually_orthogonal && non_orthogonal_to_state;
  }
};

/// Representativeness conditions for a pure W and non-degenerate A. Any
/// other case throws UnsupportedCaseError.
RepresentativeReport check_representative(const ContextualState& cs);

struct EquivalenceReport {
  double tr_w;   // Tr(W B)
  double tr_wa;  // Tr(W_A B)
  double delta;
};

/// Compares Tr(W A) with Tr(W_A A) for the context's own observable.
EquivalenceReport statistical_equivalence(const MeasurementContext& ctx);
/// Same comparison for an arbitrary probe b (equal whenever [A, b] = 0).
EquivalenceReport compare_expectations(const MeasurementContext& ctx, const ComplexMatrix& b);

/// 1/2 Tr|W_A - W_B|
double contexts_distance(const DensityOperator& w, const Observable& a, const Observable& b);

/// Non-selective Lueders maps applied left to right.
DensityOperator sequential_luders(const DensityOperator& w, std::span<const Observable> sequence);

struct LatticeReport {
  std::size_t atoms;
  std::size_t element_count;
  bool orthogonal;
  bool complete;
  /// meet (product), join (P + Q - PQ) and complement (I - P) stay in the
  /// lattice, and every element is a projector.
  bool closed;
  /// Atom probabilities lie in [0, 1], sum to 1, and are additive over
  /// disjoint joins, for every probe state.
  bool kolmogorov;
  double worst_deviation;

  bool is_boolean() const { return orthogonal && complete && closed && kolmogorov; }
};

inline constexpr std::size_t kMaxLatticeAtoms = 8;

LatticeReport boolean_lattice_check(const Observable& a, std::span<const DensityOperator> probes);

}  // namespace qcontext

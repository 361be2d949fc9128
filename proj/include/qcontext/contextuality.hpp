#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcontext/context.hpp"
#include "qcontext/matrix.hpp"

namespace qcontext {

/// Observables squaring to I, grouped into pairwise-commuting contexts whose
/// ordered operator product equals sign * I. All three properties are
/// verified numerically at construction (tolerance 1e-9); a violation throws
/// InvalidValueError.
class ValueAssignmentProblem {
 public:
  ValueAssignmentProblem(std::vector<ComplexMatrix> observables, std::vector<std::string> labels,
                         std::vector<std::vector<std::size_t>> contexts, std::vector<int> signs);

  const std::vector<ComplexMatrix>& observables() const { return observables_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<std::size_t>>& contexts() const { return contexts_; }
  const std::vector<int>& signs() const { return signs_; }
  std::size_t size() const { return observables_.size(); }

  /// Copy without the given context.
  ValueAssignmentProblem without_context(std::size_t index) const;
  /// Largest deviation |prod - sign * I| over all contexts.
  double max_identity_residual() const;

 private:
  std::vector<ComplexMatrix> observables_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> contexts_;
  std::vector<int> signs_;
};

/// 3x3 square of two-qubit Pauli products: rows, then columns; the third
/// column multiplies to -I.
ValueAssignmentProblem mermin_peres_square();

inline constexpr std::size_t kMaxSearchObservables = 20;

struct AssignmentSearch {
  std::uint64_t searched;
  std::uint64_t satisfying;
  /// First satisfying assignment in enumeration order (values +1 / -1).
  std::optional<std::vector<int>> assignment;
};

/// Exhaustive search over {+1, -1}^n. Throws UnsupportedCaseError for n > 20.
AssignmentSearch search_noncontextual_assignment(const ValueAssignmentProblem& problem);

/// True iff every context's value product equals its sign.
bool satisfies(const ValueAssignmentProblem& problem, const std::vector<int>& assignment);

struct GhzReport {
  /// Expectations of XXX, XYY, YXY, YYX on the GHZ state.
  std::vector<std::string> operators;
  std::vector<double> eigenvalues;
  /// Max |O psi - lambda psi| over the four operators.
  double eigen_residual;
  /// Product of the four required signs.
  int sign_product;
  /// Product of value products forced by any +-1 assignment: each
  /// single-site value appears squared.
  int forced_product;
  /// Of the 64 local assignments, how many satisfy all four constraints.
  int satisfying_assignments;
  bool contradiction;
};

GhzReport ghz_contradiction();

struct ValueDependenceReport {
  std::vector<OutcomeProbability> direct;
  std::vector<OutcomeProbability> after_b;
  std::vector<OutcomeProbability> after_c;
  /// Max difference between any two of the three A distributions.
  double max_distribution_difference;
  bool distributions_differ;
  /// Trace distance between the B- and C-conditioned states.
  double context_state_distance;
  bool context_states_differ;
};

/// A statistics for w directly, after non-selective B, and after
/// non-selective C. Requires [A,B] = 0, [A,C] = 0, [B,C] != 0; a violation
/// throws PreconditionError naming the pair.
ValueDependenceReport value_dependence_demo(const DensityOperator& w, const Observable& a, const Observable& b,
                                            const Observable& c);

}  // namespace qcontext

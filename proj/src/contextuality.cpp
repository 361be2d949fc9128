#include "qcontext/contextuality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "qcontext/errors.hpp"
#include "qcontext/states.hpp"
#include "qcontext/tolerances.hpp"

namespace qcontext {

namespace {

ComplexMatrix ordered_product(const std::vector<ComplexMatrix>& ops, const std::vector<std::size_t>& context) {
  ComplexMatrix prod = ComplexMatrix::identity(ops.front().dim());
  for (std::size_t idx : context) prod = prod * ops[idx];
  return prod;
}

ComplexMatrix kron3(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
  return tensor(tensor(a, b), c);
}

}  // namespace

ValueAssignmentProblem::ValueAssignmentProblem(std::vector<ComplexMatrix> observables, std::vector<std::string> labels,
                                               std::vector<std::vector<std::size_t>> contexts, std::vector<int> signs)
    : observables_(std::move(observables)),
      labels_(std::move(labels)),
      contexts_(std::move(contexts)),
      signs_(std::move(signs)) {
  if (observables_.empty()) throw InvalidValueError("value assignment problem has no observables");
  if (labels_.empty()) {
    for (std::size_t i = 0; i < observables_.size(); ++i) labels_.push_back("O" + std::to_string(i));
  }
  if (labels_.size() != observables_.size()) throw InvalidValueError("labels and observables differ in count");
  if (signs_.size() != contexts_.size()) throw InvalidValueError("signs and contexts differ in count");

  const std::size_t dim = observables_.front().dim();
  const ComplexMatrix id = ComplexMatrix::identity(dim);
  for (std::size_t i = 0; i < observables_.size(); ++i) {
    const ComplexMatrix& o = observables_[i];
    if (o.dim() != dim) throw DimensionError("observable " + labels_[i] + " has mismatched dim");
    if (o.hermiticity_defect() > tol::kIdentity) {
      throw InvalidValueError("observable " + labels_[i] + " is not Hermitian");
    }
    if (max_abs_diff(o * o, id) > tol::kIdentity) {
      throw InvalidValueError("observable " + labels_[i] + " does not square to the identity");
    }
  }
  for (std::size_t c = 0; c < contexts_.size(); ++c) {
    const auto& ctx = contexts_[c];
    if (ctx.empty()) throw InvalidValueError("context " + std::to_string(c) + " is empty");
    if (signs_[c] != 1 && signs_[c] != -1) throw InvalidValueError("context signs must be +1 or -1");
    for (std::size_t idx : ctx) {
      if (idx >= observables_.size()) {
        throw InvalidValueError("context " + std::to_string(c) + " references unknown observable " +
                                std::to_string(idx));
      }
    }
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      for (std::size_t j = i + 1; j < ctx.size(); ++j) {
        if (commutator(observables_[ctx[i]], observables_[ctx[j]]).max_abs() > tol::kIdentity) {
          throw InvalidValueError("context " + std::to_string(c) + ": " + labels_[ctx[i]] + " and " +
                                  labels_[ctx[j]] + " do not commute");
        }
      }
    }
    const double residual = max_abs_diff(ordered_product(observables_, ctx), Complex(signs_[c]) * id);
    if (residual > tol::kIdentity) {
      std::ostringstream msg;
      msg << "context " << c << ": operator product is not " << (signs_[c] > 0 ? "+" : "-")
          << "I (max deviation " << residual << ")";
      throw InvalidValueError(msg.str());
    }
  }
}

ValueAssignmentProblem ValueAssignmentProblem::without_context(std::size_t index) const {
  if (index >= contexts_.size()) throw InvalidValueError("context index out of range");
  auto contexts = contexts_;
  auto signs = signs_;
  contexts.erase(contexts.begin() + static_cast<std::ptrdiff_t>(index));
  signs.erase(signs.begin() + static_cast<std::ptrdiff_t>(index));
  return ValueAssignmentProblem(observables_, labels_, std::move(contexts), std::move(signs));
}

double ValueAssignmentProblem::max_identity_residual() const {
  const ComplexMatrix id = ComplexMatrix::identity(observables_.front().dim());
  double worst = 0.0;
  for (std::size_t c = 0; c < contexts_.size(); ++c) {
    worst = std::max(worst, max_abs_diff(ordered_product(observables_, contexts_[c]), Complex(signs_[c]) * id));
  }
  return worst;
}

ValueAssignmentProblem mermin_peres_square() {
  const ComplexMatrix i = pauli::i2();
  const ComplexMatrix x = pauli::x();
  const ComplexMatrix y = pauli::y();
  const ComplexMatrix z = pauli::z();
  std::vector<ComplexMatrix> obs = {
      tensor(x, i), tensor(i, x), tensor(x, x),  //
      tensor(i, y), tensor(y, i), tensor(y, y),  //
      tensor(x, y), tensor(y, x), tensor(z, z),
  };
  std::vector<std::string> labels = {"XI", "IX", "XX", "IY", "YI", "YY", "XY", "YX", "ZZ"};
  std::vector<std::vector<std::size_t>> contexts = {
      {0, 1, 2}, {3, 4, 5}, {6, 7, 8},  // rows
      {0, 3, 6}, {1, 4, 7}, {2, 5, 8},  // columns
  };
  std::vector<int> signs = {1, 1, 1, 1, 1, -1};
  return ValueAssignmentProblem(std::move(obs), std::move(labels), std::move(contexts), std::move(signs));
}

bool satisfies(const ValueAssignmentProblem& problem, const std::vector<int>& assignment) {
  if (assignment.size() != problem.size()) return false;
  for (std::size_t c = 0; c < problem.contexts().size(); ++c) {
    int prod = 1;
    for (std::size_t idx : problem.contexts()[c]) prod *= assignment[idx];
    if (prod != problem.signs()[c]) return false;
  }
  return true;
}

AssignmentSearch search_noncontextual_assignment(const ValueAssignmentProblem& problem) {
  const std::size_t n = problem.size();
  if (n > kMaxSearchObservables) {
    throw UnsupportedCaseError("search_noncontextual_assignment: " + std::to_string(n) +
                               " observables exceeds limit of " + std::to_string(kMaxSearchObservables));
  }
  // Bit k of an assignment mask set means observable k takes value -1, so a
  // context's value product is -1 exactly when its masked popcount is odd.
  std::vector<std::uint32_t> context_masks;
  std::vector<unsigned> required_parity;
  for (std::size_t c = 0; c < problem.contexts().size(); ++c) {
    std::uint32_t mask = 0;
    for (std::size_t idx : problem.contexts()[c]) mask ^= (std::uint32_t{1} << idx);
    context_masks.push_back(mask);
    required_parity.push_back(problem.signs()[c] == -1 ? 1u : 0u);
  }

  const std::uint64_t total = std::uint64_t{1} << n;
  AssignmentSearch result{total, 0, std::nullopt};
  for (std::uint64_t m = 0; m < total; ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    bool ok = true;
    for (std::size_t c = 0; c < context_masks.size(); ++c) {
      if ((static_cast<unsigned>(std::popcount(mask & context_masks[c])) & 1u) != required_parity[c]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ++result.satisfying;
    if (!result.assignment) {
      std::vector<int> values(n);
      for (std::size_t k = 0; k < n; ++k) values[k] = (mask >> k) & 1u ? -1 : 1;
      result.assignment = std::move(values);
    }
  }
  return result;
}

GhzReport ghz_contradiction() {
  const ComplexMatrix x = pauli::x();
  const ComplexMatrix y = pauli::y();
  const PureState ghz = make_ghz();
  const std::vector<ComplexMatrix> ops = {kron3(x, x, x), kron3(x, y, y), kron3(y, x, y), kron3(y, y, x)};
  // Sites using X for each operator (others use Y).
  const std::vector<std::array<bool, 3>> uses_x = {
      {true, true, true}, {true, false, false}, {false, true, false}, {false, false, true}};

  GhzReport report;
  report.operators = {"XXX", "XYY", "YXY", "YYX"};
  report.eigen_residual = 0.0;
  report.sign_product = 1;
  std::vector<int> required;
  for (const ComplexMatrix& op : ops) {
    const double lambda = op.sandwich(ghz.amplitudes(), ghz.amplitudes()).real();
    ComplexVector residual = op.apply(ghz.amplitudes());
    for (std::size_t k = 0; k < residual.size(); ++k) residual[k] -= lambda * ghz[k];
    report.eigen_residual = std::max(report.eigen_residual, norm(residual));
    report.eigenvalues.push_back(lambda);
    const int sign = lambda > 0 ? 1 : -1;
    required.push_back(sign);
    report.sign_product *= sign;
  }

  // Each of x1..x3, y1..y3 appears in exactly two of the four operators, so
  // the product of all four value products is a product of squares.
  std::array<int, 6> appearances{};
  for (const auto& pattern : uses_x) {
    for (std::size_t site = 0; site < 3; ++site) ++appearances[pattern[site] ? site : 3 + site];
  }
  report.forced_product = 1;
  for (int count : appearances) {
    if (count % 2 != 0) report.forced_product = 0;
  }

  report.satisfying_assignments = 0;
  for (unsigned mask = 0; mask < 64; ++mask) {
    const auto value = [mask](std::size_t k) { return (mask >> k) & 1u ? -1 : 1; };
    bool ok = true;
    for (std::size_t o = 0; o < uses_x.size(); ++o) {
      int prod = 1;
      for (std::size_t site = 0; site < 3; ++site) prod *= value(uses_x[o][site] ? site : 3 + site);
      if (prod != required[o]) ok = false;
    }
    if (ok) ++report.satisfying_assignments;
  }

  report.contradiction = report.forced_product == 1 && report.sign_product == -1;
  return report;
}

ValueDependenceReport value_dependence_demo(const DensityOperator& w, const Observable& a, const Observable& b,
                                            const Observable& c) {
  const auto commute = [](const Observable& p, const Observable& q) {
    return commutator(p.matrix(), q.matrix()).max_abs() <= tol::kCommute;
  };
  const auto name = [](const Observable& o, const char* fallback) {
    return o.label().empty() ? std::string(fallback) : o.label();
  };
  if (!commute(a, b)) throw PreconditionError("value_dependence_demo: [A, B] != 0 (" + name(a, "A") + ", " + name(b, "B") + ")");
  if (!commute(a, c)) throw PreconditionError("value_dependence_demo: [A, C] != 0 (" + name(a, "A") + ", " + name(c, "C") + ")");
  if (commute(b, c)) throw PreconditionError("value_dependence_demo: [B, C] = 0 (" + name(b, "B") + ", " + name(c, "C") + ")");

  const DensityOperator after_b = luders_map(w, b);
  const DensityOperator after_c = luders_map(w, c);
  ValueDependenceReport report;
  report.direct = outcome_distribution(w, a);
  report.after_b = outcome_distribution(after_b, a);
  report.after_c = outcome_distribution(after_c, a);
  report.max_distribution_difference = 0.0;
  for (std::size_t i = 0; i < report.direct.size(); ++i) {
    const double d0 = report.direct[i].probability;
    const double d1 = report.after_b[i].probability;
    const double d2 = report.after_c[i].probability;
    report.max_distribution_difference =
        std::max({report.max_distribution_difference, std::abs(d0 - d1), std::abs(d0 - d2), std::abs(d1 - d2)});
  }
  report.distributions_differ = report.max_distribution_difference > 1e-9;
  report.context_state_distance = trace_distance(after_b.matrix(), after_c.matrix());
  report.context_states_differ = report.context_state_distance > 1e-9;
  return report;
}

}  // namespace qcontext

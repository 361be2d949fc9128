#include "qcontext/context.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcontext/errors.hpp"
#include "qcontext/tolerances.hpp"

namespace qcontext {

namespace {

void require_dims(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

ComplexMatrix sandwich_sum(const ComplexMatrix& w, const SpectralDecomposition& sd) {
  ComplexMatrix out(w.dim());
  for (const ComplexMatrix& p : sd.projectors) out += p * w * p;
  return out;
}

}  // namespace

Observable::Observable(ComplexMatrix matrix, std::string label)
    : matrix_(std::move(matrix)), spectrum_(spectral_decompose(matrix_)), label_(std::move(label)) {}

bool Observable::non_degenerate() const {
  for (std::size_t i = 0; i < spectrum_.projectors.size(); ++i) {
    if (spectrum_.projector_rank(i) != 1) return false;
  }
  return true;
}

MeasurementContext::MeasurementContext(DensityOperator initial_state, Observable observable)
    : initial_state_(std::move(initial_state)), observable_(std::move(observable)) {
  require_dims(initial_state_.dim(), observable_.dim(), "measurement context");
}

std::vector<OutcomeProbability> outcome_distribution(const DensityOperator& w, const Observable& a) {
  require_dims(w.dim(), a.dim(), "outcome_distribution");
  std::vector<OutcomeProbability> out;
  const SpectralDecomposition& sd = a.spectrum();
  for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
    const double p = std::clamp(w.expectation(sd.projectors[i]).real(), 0.0, 1.0);
    out.push_back({sd.eigenvalues[i], p});
  }
  return out;
}

DensityOperator luders_map(const DensityOperator& w, const Observable& a) {
  require_dims(w.dim(), a.dim(), "luders");
  return DensityOperator(sandwich_sum(w.matrix(), a.spectrum()).hermitian_part());
}

ContextualState luders_nonselective(const MeasurementContext& ctx) {
  return {luders_map(ctx.initial_state(), ctx.observable()), ctx,
          outcome_distribution(ctx.initial_state(), ctx.observable())};
}

DensityOperator luders_pure_nondegenerate(const PureState& psi, const Observable& a) {
  require_dims(psi.dim(), a.dim(), "luders (pure, non-degenerate)");
  if (!a.non_degenerate()) {
    throw UnsupportedCaseError("pure-state Lueders form requires a non-degenerate observable");
  }
  const EigenSystem es = eigh(a.matrix());
  ComplexMatrix out(psi.dim());
  for (const ComplexVector& v : es.vectors) {
    out += std::norm(inner(v, psi.amplitudes())) * ComplexMatrix::outer(v);
  }
  return DensityOperator(out);
}

RepresentativeReport check_representative(const ContextualState& cs) {
  const DensityOperator& w = cs.context.initial_state();
  const Observable& a = cs.context.observable();
  if (std::abs(w.purity() - 1.0) > tol::kHermitian || !a.non_degenerate()) {
    throw UnsupportedCaseError(
        "representativeness conditions stated only for pure/non-degenerate case");
  }
  const EigenSystem state_es = eigh(w.matrix());
  const ComplexVector& psi = state_es.vectors.back();
  const EigenSystem es = eigh(a.matrix());
  const std::size_t n = es.values.size();

  RepresentativeReport report{true, true, true, {}, {}, 0.0};
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i) {
    const double weight = cs.state.matrix().sandwich(es.vectors[i], es.vectors[i]).real();
    if (std::sqrt(std::max(weight, 0.0)) > tol::kSupport) {
      support.push_back(i);
    } else {
      report.excluded.push_back(es.values[i]);
    }
  }

  ComplexMatrix representation(w.dim());
  for (std::size_t idx : support) {
    const ComplexVector& v = es.vectors[idx];
    ComplexVector residual = a.matrix().apply(v);
    for (std::size_t k = 0; k < v.size(); ++k) residual[k] -= es.values[idx] * v[k];
    if (norm(residual) > tol::kHermitian) report.eigenvectors_of_observable = false;

    const double amplitude = std::abs(inner(psi, v));
    if (!(amplitude > tol::kSupport)) report.non_orthogonal_to_state = false;
    report.support.push_back({es.values[idx], amplitude});
    representation += amplitude * amplitude * ComplexMatrix::outer(v);
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      if (std::abs(inner(es.vectors[support[i]], es.vectors[support[j]])) > tol::kHermitian) {
        report.mutually_orthogonal = false;
      }
    }
  }
  report.representation_deviation = trace_distance(cs.state.matrix(), representation);
  return report;
}

EquivalenceReport statistical_equivalence(const MeasurementContext& ctx) {
  return compare_expectations(ctx, ctx.observable().matrix());
}

EquivalenceReport compare_expectations(const MeasurementContext& ctx, const ComplexMatrix& b) {
  require_dims(ctx.initial_state().dim(), b.dim(), "compare_expectations");
  const DensityOperator wa = luders_map(ctx.initial_state(), ctx.observable());
  const double tr_w = ctx.initial_state().expectation(b).real();
  const double tr_wa = wa.expectation(b).real();
  return {tr_w, tr_wa, std::abs(tr_w - tr_wa)};
}

double contexts_distance(const DensityOperator& w, const Observable& a, const Observable& b) {
  return trace_distance(luders_map(w, a).matrix(), luders_map(w, b).matrix());
}

DensityOperator sequential_luders(const DensityOperator& w, std::span<const Observable> sequence) {
  DensityOperator state = w;
  for (const Observable& a : sequence) state = luders_map(state, a);
  return state;
}

LatticeReport boolean_lattice_check(const Observable& a, std::span<const DensityOperator> probes) {
  const std::vector<ComplexMatrix>& atoms = a.spectrum().projectors;
  const std::size_t k = atoms.size();
  if (k > kMaxLatticeAtoms) {
    throw UnsupportedCaseError("boolean_lattice_check: " + std::to_string(k) + " atoms exceeds limit of " +
                               std::to_string(kMaxLatticeAtoms));
  }
  const std::size_t n = a.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  constexpr double kLatticeTol = 1e-9;
  constexpr double kProbTol = 1e-10;

  LatticeReport report{k, std::size_t{1} << k, true, true, true, true, 0.0};
  const auto note = [&report](double deviation, double limit, bool& flag) {
    report.worst_deviation = std::max(report.worst_deviation, deviation);
    if (deviation > limit) flag = false;
  };

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) note((atoms[i] * atoms[j]).max_abs(), kLatticeTol, report.orthogonal);
  }

  // Element for subset mask = sum of the atoms it contains.
  std::vector<ComplexMatrix> elements;
  elements.reserve(report.element_count);
  for (std::size_t mask = 0; mask < report.element_count; ++mask) {
    ComplexMatrix e(n);
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) e += atoms[i];
    }
    elements.push_back(std::move(e));
  }
  const std::size_t full = report.element_count - 1;
  note(max_abs_diff(elements[full], id), kLatticeTol, report.complete);

  for (std::size_t m1 = 0; m1 <= full; ++m1) {
    const ComplexMatrix& e1 = elements[m1];
    note(max_abs_diff(e1 * e1, e1), kLatticeTol, report.closed);
    note(max_abs_diff(id - e1, elements[full & ~m1]), kLatticeTol, report.closed);
    for (std::size_t m2 = m1 + 1; m2 <= full; ++m2) {
      const ComplexMatrix& e2 = elements[m2];
      const ComplexMatrix meet = e1 * e2;
      note(max_abs_diff(meet, elements[m1 & m2]), kLatticeTol, report.closed);
      note(max_abs_diff(e1 + e2 - meet, elements[m1 | m2]), kLatticeTol, report.closed);
    }
  }

  for (const DensityOperator& w : probes) {
    require_dims(w.dim(), n, "boolean_lattice_check");
    std::vector<double> p(k);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      p[i] = w.expectation(atoms[i]).real();
      total += p[i];
      note(std::max(-p[i], p[i] - 1.0), kProbTol, report.kolmogorov);
    }
    note(std::abs(total - 1.0), kProbTol, report.kolmogorov);
    for (std::size_t mask = 0; mask <= full; ++mask) {
      double additive = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (std::size_t{1} << i)) additive += p[i];
      }
      note(std::abs(w.expectation(elements[mask]).real() - additive), kProbTol, report.kolmogorov);
    }
  }
  return report;
}

}  // namespace qcontext

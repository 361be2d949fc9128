#include "qcontext/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcontext/context.hpp"
#include "qcontext/contextuality.hpp"
#include "qcontext/correlations.hpp"
#include "qcontext/mub.hpp"
#include "qcontext/random.hpp"
#include "qcontext/spectral.hpp"
#include "qcontext/states.hpp"

namespace qcontext::acceptance {

namespace {

Check at_most(std::string name, double measured, double bound) {
  return {std::move(name), measured <= bound, measured, bound};
}

Check below(std::string name, double measured, double bound) {
  return {std::move(name), measured < bound, measured, bound};
}

Check above(std::string name, double measured, double bound) {
  return {std::move(name), measured > bound, measured, bound};
}

Check flag(std::string name, bool value) { return {std::move(name), value, value ? 1.0 : 0.0, 1.0}; }

// Direct evaluation of Tr[w (a.sigma (x) b.sigma)] without going through
// spectral projectors.
double trace_oracle(const DensityOperator& w, const Direction& a, const Direction& b) {
  const auto dot_sigma = [](const Direction& d) {
    return Complex(d.x()) * pauli::x() + Complex(d.y()) * pauli::y() + Complex(d.z()) * pauli::z();
  };
  return (w.matrix() * tensor(dot_sigma(a), dot_sigma(b))).trace().real();
}

DensityOperator random_product_state(Rng& rng) {
  return DensityOperator::from_pure(make_product(random_pure_state(rng, 2), random_pure_state(rng, 2)));
}

// Random Hermitian with spectrum spread enough to be non-degenerate.
Observable random_nondegenerate(Rng& rng, std::size_t dim) {
  while (true) {
    Observable o(random_hermitian(rng, dim));
    const auto& ev = o.spectrum().eigenvalues;
    bool spread = ev.size() == dim;
    for (std::size_t k = 1; spread && k < ev.size(); ++k) spread = ev[k] - ev[k - 1] > 1e-3;
    if (spread) return o;
  }
}

}  // namespace

bool Criterion::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Criterion perfect_anticorrelation(std::uint64_t seed) {
  Rng rng(seed + 1);
  const PureState singlet = make_singlet();
  const DensityOperator w = DensityOperator::from_pure(singlet);
  double worst_same = 0.0;
  double worst_opposite = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Direction a = random_direction(rng);
    const CorrelationRecord rec = joint_probabilities(w, a, a);
    worst_same = std::max(worst_same, rec.joint[0][0] + rec.joint[1][1]);
    const Observable obs = spin_observable(a);
    for (int outcome : {1, -1}) {
      const RemoteState rs = conditional_remote_state(singlet, a, outcome);
      // Projector onto the opposite outcome: index 0 is -1, index 1 is +1.
      const ComplexMatrix& opposite = obs.spectrum().projectors[outcome == 1 ? 0 : 1];
      const double p_opposite = opposite.sandwich(rs.remote.amplitudes(), rs.remote.amplitudes()).real();
      worst_opposite = std::max(worst_opposite, std::abs(p_opposite - 1.0));
    }
  }
  return {1,
          "singlet perfect anticorrelation",
          {below("max p(same outcome | same axis)", worst_same, 1e-9),
           at_most("max |p(opposite remote outcome) - 1|", worst_opposite, 1e-9)}};
}

Criterion singlet_correlation_law(std::uint64_t seed) {
  Rng rng(seed + 2);
  const DensityOperator w = DensityOperator::from_pure(make_singlet());
  double worst_table = 0.0;
  double worst_oracle = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Direction a = random_direction(rng);
    const Direction b = random_direction(rng);
    const double e = correlation(w, a, b);
    worst_table = std::max(worst_table, std::abs(e + a.dot(b)));
    worst_oracle = std::max(worst_oracle, std::abs(e - trace_oracle(w, a, b)));
  }
  return {2,
          "singlet correlation law E(a,b) = -a.b",
          {at_most("max |E(a,b) + a.b|", worst_table, 1e-9),
           at_most("max |E(a,b) - Tr[w (a.sigma x b.sigma)]|", worst_oracle, 1e-9)}};
}

Criterion chsh_bounds(std::uint64_t seed) {
  Rng rng(seed + 3);
  const DensityOperator singlet = DensityOperator::from_pure(make_singlet());
  const double s = chsh(singlet, Direction::in_xz_plane(90.0), Direction::in_xz_plane(0.0),
                        Direction::in_xz_plane(45.0), Direction::in_xz_plane(135.0));
  const double tsirelson = 2.0 * std::numbers::sqrt2;

  double worst_product = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const DensityOperator w = random_product_state(rng);
    const double v = chsh(w, random_direction(rng), random_direction(rng), random_direction(rng),
                          random_direction(rng));
    worst_product = std::max(worst_product, std::abs(v));
  }

  int worst_local = 0;
  for (int mask = 0; mask < 16; ++mask) {
    const auto value = [mask](int bit) { return (mask >> bit) & 1 ? -1 : 1; };
    const int a = value(0), a2 = value(1), b = value(2), b2 = value(3);
    worst_local = std::max(worst_local, std::abs(a * b + a * b2 + a2 * b - a2 * b2));
  }
  return {3,
          "CHSH: quantum maximum and local bounds",
          {at_most("||S_singlet| - 2 sqrt 2|", std::abs(std::abs(s) - tsirelson), 1e-6),
           at_most("max |S| over 100 product states", worst_product, 2.0 + 1e-8),
           at_most("max |S| over 16 deterministic strategies", worst_local, 2.0)}};
}

Criterion no_signalling(std::uint64_t seed) {
  Rng rng(seed + 4);
  double worst_trace = 0.0;
  double worst_marginal = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const DensityOperator w = random_density(rng, 4);
    std::vector<Direction> settings;
    for (int k = 0; k < 5; ++k) settings.push_back(random_direction(rng));
    const NoSignallingReport r = no_signalling_check(w, settings, random_direction(rng));
    worst_trace = std::max(worst_trace, r.max_trace_distance);
    worst_marginal = std::max(worst_marginal, r.max_marginal_deviation);
  }
  const DensityOperator singlet = DensityOperator::from_pure(make_singlet());
  const Direction z(0.0, 0.0, 1.0);
  const double dependence = outcome_dependence(singlet, z, z);
  return {4,
          "no-signalling holds while outcome independence fails",
          {below("max S2 trace distance across S1 settings", worst_trace, 1e-9),
           below("max S2 marginal deviation across S1 settings", worst_marginal, 1e-9),
           at_most("|outcome_dependence(singlet, b = a) - 0.5|", std::abs(dependence - 0.5), 1e-9)}};
}

Criterion luders_forms(std::uint64_t seed) {
  Rng rng(seed + 5);
  double worst_forms = 0.0;
  double worst_idempotence = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + static_cast<std::size_t>(trial % 3);
    const PureState psi = random_pure_state(rng, dim);
    const Observable a = random_nondegenerate(rng, dim);
    const DensityOperator w = DensityOperator::from_pure(psi);
    const ContextualState cs = luders_nonselective(MeasurementContext(w, a));
    const DensityOperator eq4 = luders_pure_nondegenerate(psi, a);
    worst_forms = std::max(worst_forms, trace_distance(cs.state.matrix(), eq4.matrix()));
    const DensityOperator twice = luders_map(cs.state, a);
    worst_idempotence = std::max(worst_idempotence, trace_distance(twice.matrix(), cs.state.matrix()));
  }
  return {5,
          "Lueders general and pure/non-degenerate forms agree",
          {at_most("max trace distance sum P W P vs sum |c|^2 |a><a|", worst_forms, 1e-12),
           at_most("max trace distance of Lueders map applied twice vs once", worst_idempotence, 1e-10)}};
}

Criterion statistical_equivalence_checks(std::uint64_t seed) {
  Rng rng(seed + 6);
  double worst_delta = 0.0;
  double worst_commuting = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + static_cast<std::size_t>(trial % 3);
    const DensityOperator w = random_density(rng, dim);
    const Observable a(random_hermitian(rng, dim));
    const MeasurementContext ctx(w, a);
    worst_delta = std::max(worst_delta, statistical_equivalence(ctx).delta);
    const ComplexMatrix a2 = a.matrix() * a.matrix();
    const ComplexMatrix a3 = a2 * a.matrix();
    for (const ComplexMatrix& b : {a2, a3 - Complex(2.0) * a.matrix()}) {
      worst_commuting = std::max(worst_commuting, compare_expectations(ctx, b).delta);
    }
  }
  const double r = 1.0 / std::numbers::sqrt2;
  const MeasurementContext witness(DensityOperator::from_pure(PureState({r, r})), Observable(pauli::z(), "sigma_z"));
  const EquivalenceReport incompatible = compare_expectations(witness, pauli::x());
  return {6,
          "statistical equivalence Tr(W A) = Tr(W_A A)",
          {below("max |Tr(W A) - Tr(W_A A)| over 100 pairs", worst_delta, 1e-9),
           at_most("max deviation for B = f(A)", worst_commuting, 1e-8),
           at_most("|deviation(|+>, sigma_z, sigma_x) - 1|", std::abs(incompatible.delta - 1.0), 1e-9)}};
}

Criterion context_distinctness(std::uint64_t seed) {
  Rng rng(seed + 7);
  const double r = 1.0 / std::numbers::sqrt2;
  const DensityOperator plus = DensityOperator::from_pure(PureState({r, r}));
  const double distinct = contexts_distance(plus, Observable(pauli::z()), Observable(pauli::x()));

  double worst_shared = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t dim = 2 + static_cast<std::size_t>(trial % 3);
    // Shared eigenbasis: two different spectra on the eigenvectors of one
    // random Hermitian matrix.
    const EigenSystem basis = eigh(random_hermitian(rng, dim));
    std::uniform_real_distribution<double> spread(-3.0, 3.0);
    ComplexMatrix a(dim);
    ComplexMatrix b(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      a += (static_cast<double>(k) + spread(rng) * 0.1) * ComplexMatrix::outer(basis.vectors[k]);
      b += spread(rng) * ComplexMatrix::outer(basis.vectors[k]);
    }
    const DensityOperator w = random_density(rng, dim);
    worst_shared = std::max(worst_shared, contexts_distance(w, Observable(a.hermitian_part()), Observable(b.hermitian_part())));
  }
  return {7,
          "incompatible contexts yield distinct contextual states",
          {at_most("|distance(|+>, sigma_z, sigma_x) - 0.5|", std::abs(distinct - 0.5), 1e-9),
           at_most("max distance for shared eigenbasis", worst_shared, 1e-12)}};
}

Criterion mermin_peres() {
  const ValueAssignmentProblem square = mermin_peres_square();
  const AssignmentSearch full = search_noncontextual_assignment(square);
  const AssignmentSearch relaxed = search_noncontextual_assignment(square.without_context(5));
  return {8,
          "Mermin-Peres square admits no noncontextual assignment",
          {at_most("max operator-product identity residual", square.max_identity_residual(), 1e-12),
           at_most("|assignments searched - 512|", std::abs(static_cast<double>(full.searched) - 512.0), 0.0),
           at_most("satisfying assignments (full square)", static_cast<double>(full.satisfying), 0.0),
           above("satisfying assignments without the -1 column", static_cast<double>(relaxed.satisfying), 0.5)}};
}

Criterion ghz() {
  const GhzReport report = ghz_contradiction();
  const std::vector<double> expected = {1.0, -1.0, -1.0, -1.0};
  double worst = report.eigen_residual;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    worst = std::max(worst, std::abs(report.eigenvalues[k] - expected[k]));
  }
  return {9,
          "GHZ eigenvalue pattern forces a contradiction",
          {at_most("max |eigenvalue - (+1,-1,-1,-1)|", worst, 1e-12),
           flag("contradiction flag", report.contradiction),
           at_most("satisfying local assignments", report.satisfying_assignments, 0.0)}};
}

Criterion holism_witness() {
  const DensityOperator singlet = DensityOperator::from_pure(make_singlet());
  const ComplexMatrix mix = Complex(0.5) * (PureState::basis(4, 1).projector() + PureState::basis(4, 2).projector());
  const DensityOperator mixture(mix);
  double reduced_gap = 0.0;
  for (Subsystem side : {Subsystem::First, Subsystem::Second}) {
    reduced_gap = std::max(reduced_gap, trace_distance(reduced_state(singlet, {2, 2}, side).matrix(),
                                                       reduced_state(mixture, {2, 2}, side).matrix()));
  }
  return {10,
          "total spin distinguishes states with identical parts",
          {at_most("|<S^2>_singlet|", std::abs(total_spin_squared(singlet)), 1e-12),
           below("reduced-state trace distance singlet vs mixture", reduced_gap, 1e-12),
           at_most("|<S^2>_mixture - 1|", std::abs(total_spin_squared(mixture) - 1.0), 1e-10)}};
}

Criterion interaction_dynamics(std::uint64_t seed) {
  Rng rng(seed + 11);
  std::vector<double> times;
  for (int k = 1; k <= 10; ++k) times.push_back(0.25 * k);

  double worst_free = 0.0;
  for (const EvolutionSample& s : entangling_evolution(0.0, times)) worst_free = std::max(worst_free, s.coefficients[1]);

  // Random non-interacting generator h1 (x) I + I (x) h2 on a random product state.
  const ComplexMatrix h = tensor(random_hermitian(rng, 2), pauli::i2()) + tensor(pauli::i2(), random_hermitian(rng, 2));
  const PureState start = make_product(random_pure_state(rng, 2), random_pure_state(rng, 2));
  for (double t : times) {
    const PureState psi = PureState::normalized(evolve_unitary(h, t, start.amplitudes()));
    worst_free = std::max(worst_free, schmidt(psi, {2, 2}).coefficients[1]);
  }

  const std::vector<double> probe = {0.5};
  const double coupled = entangling_evolution(1.0, probe).front().coefficients[1];
  return {11,
          "interaction is what entangles",
          {below("max second Schmidt coefficient, non-interacting", worst_free, 1e-8),
           above("second Schmidt coefficient, g = 1, t = 0.5", coupled, 0.01)}};
}

Criterion mub_tomography(std::uint64_t seed) {
  Rng rng(seed + 12);
  const MubSet mub = mub_qubit();
  double worst_exact = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const DensityOperator w =
        trial % 2 == 0 ? DensityOperator::from_pure(random_pure_state(rng, 2)) : random_density(rng, 2);
    const DensityOperator rho = reconstruct(measure_statistics(w, mub), mub);
    worst_exact = std::max(worst_exact, trace_distance(rho.matrix(), w.matrix()));
  }
  double worst_sampled = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const DensityOperator w = random_density(rng, 2);
    const Sampling sampling{100000, seed + 1000 + static_cast<std::uint64_t>(trial)};
    const DensityOperator rho = reconstruct(measure_statistics(w, mub, sampling), mub);
    worst_sampled = std::max(worst_sampled, trace_distance(rho.matrix(), w.matrix()));
  }
  return {12,
          "MUB tomography reconstructs the state",
          {below("max trace distance, exact statistics", worst_exact, 1e-9),
           below("max trace distance, 1e5 shots per basis", worst_sampled, 0.05)}};
}

std::vector<Criterion> run_suite(std::uint64_t seed) {
  return {perfect_anticorrelation(seed), singlet_correlation_law(seed),
          chsh_bounds(seed),             no_signalling(seed),
          luders_forms(seed),            statistical_equivalence_checks(seed),
          context_distinctness(seed),    mermin_peres(),
          ghz(),                         holism_witness(),
          interaction_dynamics(seed),    mub_tomography(seed)};
}

}  // namespace qcontext::acceptance

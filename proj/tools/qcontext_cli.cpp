// qcontext: command-line runner for the toolkit's demonstrations.
//
// Every subcommand prints a JSON report on stdout (and to --out when given).
// Exit status: 0 when every check in the report passes, 1 when a check fails,
// 2 on usage or input errors.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcontext/acceptance.hpp"
#include "qcontext/context.hpp"
#include "qcontext/contextuality.hpp"
#include "qcontext/correlations.hpp"
#include "qcontext/errors.hpp"
#include "qcontext/io.hpp"
#include "qcontext/mub.hpp"
#include "qcontext/random.hpp"
#include "qcontext/spectral.hpp"
#include "qcontext/states.hpp"
#include "qcontext/tolerances.hpp"

namespace {

using nlohmann::json;
using namespace qcontext;
using io::number;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

class RunReport {
 public:
  explicit RunReport(std::string subcommand) : subcommand_(std::move(subcommand)) {}

  json& inputs() { return inputs_; }
  json& results() { return results_; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  /// measured <= tolerance
  void check_at_most(const std::string& name, double measured, double tolerance) {
    add_check(name, measured <= tolerance, measured, tolerance);
  }
  void check_flag(const std::string& name, bool value) { add_check(name, value, value ? 1.0 : 0.0, 1.0); }
  void add_check(const std::string& name, bool pass, double measured, double tolerance) {
    checks_.push_back({{"name", name}, {"pass", pass}, {"measured", number(measured)}, {"tolerance", number(tolerance)}});
    all_pass_ = all_pass_ && pass;
  }

  bool all_pass() const { return all_pass_; }

  json to_json(std::optional<double> duration_ms) const {
    json j = {{"subcommand", subcommand_}, {"inputs", inputs_}, {"results", results_}, {"checks", checks_}};
    j["seed"] = seed_ ? json(*seed_) : json(nullptr);
    j["passed"] = all_pass_;
    if (duration_ms) j["duration_ms"] = number(*duration_ms);
    return j;
  }

 private:
  std::string subcommand_;
  json inputs_ = json::object();
  json results_ = json::object();
  json checks_ = json::array();
  std::optional<std::uint64_t> seed_;
  bool all_pass_ = true;
};

struct CommonOptions {
  double tol = 1e-9;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string csv;
  bool timing = false;
};

json numbers(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(number(v));
  return arr;
}

json direction_json(const Direction& d) { return json::array({number(d.x()), number(d.y()), number(d.z())}); }

json distribution_json(const std::vector<OutcomeProbability>& dist) {
  json arr = json::array();
  for (const auto& o : dist) arr.push_back({{"eigenvalue", number(o.eigenvalue)}, {"probability", number(o.probability)}});
  return arr;
}

BipartiteDims parse_dims(const std::string& spec, std::size_t total) {
  if (spec.empty()) {
    if (total % 2 != 0) throw DimensionError("cannot split dim " + std::to_string(total) + "; pass --dims d1,d2");
    return {2, total / 2};
  }
  const auto comma = spec.find(',');
  if (comma == std::string::npos) throw InvalidValueError("--dims expects d1,d2");
  try {
    return {std::stoul(spec.substr(0, comma)), std::stoul(spec.substr(comma + 1))};
  } catch (const std::exception&) {
    throw InvalidValueError("--dims expects two positive integers, got '" + spec + "'");
  }
}

Subsystem parse_side(int side) {
  if (side == 1) return Subsystem::First;
  if (side == 2) return Subsystem::Second;
  throw InvalidValueError("subsystem must be 1 or 2");
}

const PureState& require_pure(const io::StateInput& s, const char* what) {
  if (!s.pure) throw UnsupportedCaseError(std::string(what) + " requires a pure state");
  return *s.pure;
}

double vector_distance(std::span<const Complex> a, std::span<const Complex> b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidValueError("cannot write '" + path + "'");
  out << text;
}

// ---- subcommands -----------------------------------------------------------

struct StateObs {
  std::string state;
  std::string observable;
  std::string dims;
};

void run_schmidt(RunReport& r, const StateObs& in, const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(in.state);
  const PureState& psi = require_pure(s, "schmidt");
  const BipartiteDims dims = parse_dims(in.dims, psi.dim());
  r.inputs() = {{"state", in.state}, {"dims", {dims.first, dims.second}}};
  const SchmidtDecomposition sd = schmidt(psi, dims);
  double norm2 = 0.0;
  for (double c : sd.coefficients) norm2 += c * c;
  const double fid = fidelity(psi, sd.reconstruct());
  r.results() = {{"coefficients", numbers(sd.coefficients)}, {"rank", sd.rank()}, {"fidelity", number(fid)}};
  json left = json::array();
  json right = json::array();
  for (std::size_t k = 0; k < sd.coefficients.size(); ++k) {
    left.push_back(io::vector_to_json(sd.left_basis[k]));
    right.push_back(io::vector_to_json(sd.right_basis[k]));
  }
  r.results()["left_basis"] = left;
  r.results()["right_basis"] = right;
  r.check_at_most("coefficient_square_sum", std::abs(norm2 - 1.0), opt.tol);
  r.check_at_most("reconstruction_infidelity", 1.0 - fid, opt.tol);
}

void run_product_check(RunReport& r, const StateObs& in, const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(in.state);
  const PureState& psi = require_pure(s, "product-check");
  const BipartiteDims dims = parse_dims(in.dims, psi.dim());
  r.inputs() = {{"state", in.state}, {"dims", {dims.first, dims.second}}};
  const ProductCheck pc = is_product(psi, dims);
  const double purity = reduced_state(s.density, dims, Subsystem::First).purity();
  r.results() = {{"is_product", pc.is_product}, {"schmidt_rank", pc.schmidt_rank}, {"reduced_purity", number(purity)}};
  if (pc.factors) {
    r.results()["factors"] = {io::vector_to_json(pc.factors->first.amplitudes()),
                              io::vector_to_json(pc.factors->second.amplitudes())};
    const ComplexVector rebuilt = tensor(pc.factors->first.amplitudes(), pc.factors->second.amplitudes());
    r.check_at_most("factor_reconstruction", vector_distance(rebuilt, psi.amplitudes()), opt.tol);
  }
  // Pure reduced state iff product.
  r.check_flag("purity_consistent", (std::abs(purity - 1.0) <= 1e-8) == pc.is_product);
}

void run_reduced(RunReport& r, const StateObs& in, int keep, const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(in.state);
  const BipartiteDims dims = parse_dims(in.dims, s.density.dim());
  r.inputs() = {{"state", in.state}, {"dims", {dims.first, dims.second}}, {"keep", keep}};
  const DensityOperator red = reduced_state(s.density, dims, parse_side(keep));
  r.results() = {{"reduced", io::matrix_to_json(red.matrix())}, {"purity", number(red.purity())}};
  r.check_at_most("trace", std::abs(red.matrix().trace().real() - 1.0), opt.tol);
  r.check_at_most("hermiticity_defect", red.matrix().hermiticity_defect(), opt.tol);
}

void run_total_spin(RunReport& r, const StateObs& in, const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(in.state);
  r.inputs() = {{"state", in.state}};
  const double s2 = total_spin_squared(s.density);
  r.results() = {{"total_spin_squared", number(s2)},
                 {"reduced_first", io::matrix_to_json(reduced_state(s.density, {2, 2}, Subsystem::First).matrix())},
                 {"reduced_second", io::matrix_to_json(reduced_state(s.density, {2, 2}, Subsystem::Second).matrix())}};
  // S^2 has eigenvalues 0 (singlet) and 2 (triplet).
  r.check_at_most("within_spectrum", std::max({0.0, -s2, s2 - 2.0}), opt.tol);
}

void run_evolve(RunReport& r, double coupling, double t_max, int steps, const CommonOptions& opt) {
  if (steps < 1) throw InvalidValueError("--steps must be positive");
  r.inputs() = {{"coupling", number(coupling)}, {"t_max", number(t_max)}, {"steps", steps}};
  std::vector<double> times;
  for (int k = 0; k <= steps; ++k) times.push_back(t_max * k / steps);
  const auto samples = entangling_evolution(coupling, times);
  json rows = json::array();
  std::string csv = "t,c1,c2,rank\n";
  double worst_second = 0.0;
  for (const EvolutionSample& s : samples) {
    rows.push_back({{"t", number(s.time)}, {"coefficients", numbers(s.coefficients)}, {"rank", s.rank}});
    worst_second = std::max(worst_second, s.coefficients[1]);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%zu\n", io::round12(s.time), io::round12(s.coefficients[0]),
                  io::round12(s.coefficients[1]), s.rank);
    csv += buf;
  }
  const NonInteractingCheck ni = is_noninteracting(entangling_hamiltonian(coupling), {2, 2});
  r.results() = {{"samples", rows},
                 {"noninteracting", ni.noninteracting},
                 {"interaction_residual", number(ni.residual)},
                 {"max_second_coefficient", number(worst_second)}};
  r.check_flag("initial_rank_one", samples.front().rank == 1);
  if (ni.noninteracting) r.check_at_most("product_form_preserved", worst_second, 1e-8);
  if (!opt.csv.empty()) write_text(opt.csv, csv);
}

void run_luders(RunReport& r, const StateObs& in, const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(in.state);
  const Observable a = io::parse_observable(in.observable);
  r.inputs() = {{"state", in.state}, {"observable", in.observable}};
  const MeasurementContext ctx(s.density, a);
  const ContextualState cs = luders_nonselective(ctx);
  const EquivalenceReport eq = statistical_equivalence(ctx);
  double total = 0.0;
  for (const auto& o : cs.outcome_probabilities) total += o.probability;
  r.results() = {{"contextual_state", io::matrix_to_json(cs.state.matrix())},
                 {"outcome_probabilities", distribution_json(cs.outcome_probabilities)},
                 {"tr_WA", number(eq.tr_w)},
                 {"tr_WA_A", number(eq.tr_wa)},
                 {"equivalence_delta", number(eq.delta)}};
  r.check_at_most("equivalence_delta", eq.delta, opt.tol);
  r.check_at_most("commutes_with_observable", commutator(cs.state.matrix(), a.matrix()).max_abs(), opt.tol);
  r.check_at_most("probabilities_sum", std::abs(total - 1.0), opt.tol);
}

void run_representative(RunReport& r, const StateObs& in, const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(in.state);
  const Observable a = io::parse_observable(in.observable);
  r.inputs() = {{"state", in.state}, {"observable", in.observable}};
  const RepresentativeReport rep = check_representative(luders_nonselective(MeasurementContext(s.density, a)));
  json support = json::array();
  for (const auto& v : rep.support) support.push_back({{"eigenvalue", number(v.eigenvalue)}, {"amplitude", number(v.amplitude)}});
  r.results() = {{"support", support},
                 {"support_size", rep.support.size()},
                 {"excluded", numbers(rep.excluded)},
                 {"representation_deviation", number(rep.representation_deviation)}};
  r.check_flag("eigenvectors_of_observable", rep.eigenvectors_of_observable);
  r.check_flag("mutually_orthogonal", rep.mutually_orthogonal);
  r.check_flag("non_orthogonal_to_state", rep.non_orthogonal_to_state);
  r.check_at_most("representation_deviation", rep.representation_deviation, opt.tol);
}

void run_equivalence(RunReport& r, const StateObs& in, const std::string& probe, const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(in.state);
  const Observable a = io::parse_observable(in.observable);
  r.inputs() = {{"state", in.state}, {"observable", in.observable}};
  const MeasurementContext ctx(s.density, a);
  const EquivalenceReport eq = statistical_equivalence(ctx);
  r.results() = {{"tr_WA", number(eq.tr_w)}, {"tr_WA_A", number(eq.tr_wa)}, {"delta", number(eq.delta)}};
  r.check_at_most("delta", eq.delta, opt.tol);
  if (!probe.empty()) {
    const Observable b = io::parse_observable(probe);
    r.inputs()["probe"] = probe;
    const EquivalenceReport pb = compare_expectations(ctx, b.matrix());
    const bool commuting = commutator(a.matrix(), b.matrix()).max_abs() <= tol::kCommute;
    r.results()["probe"] = {{"tr_WB", number(pb.tr_w)},
                            {"tr_WA_B", number(pb.tr_wa)},
                            {"deviation", number(pb.delta)},
                            {"commutes_with_observable", commuting}};
    if (commuting) r.check_at_most("commuting_probe_delta", pb.delta, 1e-8);
  }
}

void run_context_distance(RunReport& r, const StateObs& in, const std::string& other, const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(in.state);
  const Observable a = io::parse_observable(in.observable);
  const Observable b = io::parse_observable(other);
  r.inputs() = {{"state", in.state}, {"observable", in.observable}, {"other", other}};
  const double d = contexts_distance(s.density, a, b);
  r.results() = {{"trace_distance", number(d)},
                 {"observables_commute", commutator(a.matrix(), b.matrix()).max_abs() <= tol::kCommute}};
  r.check_at_most("distance_in_unit_interval", std::max(0.0, std::max(-d, d - 1.0)), opt.tol);
}

void run_sequential(RunReport& r, const StateObs& in, const std::vector<std::string>& sequence,
                    const std::string& measure, const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(in.state);
  std::vector<Observable> obs;
  for (const std::string& spec : sequence) obs.push_back(io::parse_observable(spec));
  r.inputs() = {{"state", in.state}, {"sequence", sequence}};
  const DensityOperator final_state = sequential_luders(s.density, obs);
  r.results() = {{"final_state", io::matrix_to_json(final_state.matrix())}};
  if (!measure.empty()) {
    r.inputs()["measure"] = measure;
    r.results()["probabilities"] = distribution_json(outcome_distribution(final_state, io::parse_observable(measure)));
  }
  r.check_at_most("trace", std::abs(final_state.matrix().trace().real() - 1.0), opt.tol);
}

void run_boolean_lattice(RunReport& r, const std::string& observable, int probes, const CommonOptions& opt) {
  const Observable a = io::parse_observable(observable);
  const std::uint64_t seed = opt.seed.value_or(acceptance::kDefaultSeed);
  r.set_seed(seed);
  r.inputs() = {{"observable", observable}, {"probes", probes}};
  Rng rng(seed);
  std::vector<DensityOperator> states;
  for (int k = 0; k < probes; ++k) states.push_back(random_density(rng, a.dim()));
  const LatticeReport rep = boolean_lattice_check(a, states);
  r.results() = {{"atoms", rep.atoms},
                 {"element_count", rep.element_count},
                 {"worst_deviation", number(rep.worst_deviation)},
                 {"boolean", rep.is_boolean()}};
  r.check_flag("orthogonal", rep.orthogonal);
  r.check_flag("complete", rep.complete);
  r.check_flag("closed", rep.closed);
  r.check_flag("kolmogorov", rep.kolmogorov);
}

json record_json(const CorrelationRecord& rec) {
  return {{"a", direction_json(rec.a)},
          {"b", direction_json(rec.b)},
          {"joint", {{"pp", number(rec.joint[0][0])}, {"pm", number(rec.joint[0][1])},
                     {"mp", number(rec.joint[1][0])}, {"mm", number(rec.joint[1][1])}}},
          {"marginal_a", {number(rec.marginal_a[0]), number(rec.marginal_a[1])}},
          {"marginal_b", {number(rec.marginal_b[0]), number(rec.marginal_b[1])}},
          {"E", number(rec.expectation)}};
}

void run_correlate(RunReport& r, const std::string& state, const std::string& a_spec, const std::string& b_spec,
                   double step, const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(state);
  const Direction a = io::parse_direction(a_spec);
  const Direction b = io::parse_direction(b_spec);
  r.inputs() = {{"state", state}, {"a", a_spec}, {"b", b_spec}};
  const CorrelationRecord rec = joint_probabilities(s.density, a, b);
  r.results() = record_json(rec);
  double total = 0.0;
  for (const auto& row : rec.joint) total += row[0] + row[1];
  r.check_at_most("joint_sums_to_one", std::abs(total - 1.0), opt.tol);
  const auto dot_sigma = [](const Direction& d) {
    return Complex(d.x()) * pauli::x() + Complex(d.y()) * pauli::y() + Complex(d.z()) * pauli::z();
  };
  const double direct = s.density.expectation(tensor(dot_sigma(a), dot_sigma(b))).real();
  r.check_at_most("expectation_matches_trace", std::abs(rec.expectation - direct), opt.tol);
  if (!opt.csv.empty()) {
    if (!(step > 0.0)) throw InvalidValueError("--step must be positive");
    std::vector<double> thetas;
    for (int k = 0; k * step <= 180.0 + 1e-9; ++k) thetas.push_back(k * step);
    const auto rows = correlation_sweep(s.density, thetas);
    std::ofstream out(opt.csv);
    if (!out) throw InvalidValueError("cannot write '" + opt.csv + "'");
    write_correlation_csv(out, thetas, rows);
    r.results()["csv_rows"] = rows.size();
  }
}

void run_chsh(RunReport& r, const std::string& state, const std::array<std::string, 4>& settings,
              const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(state);
  std::array<Direction, 4> d = {io::parse_direction(settings[0]), io::parse_direction(settings[1]),
                                io::parse_direction(settings[2]), io::parse_direction(settings[3])};
  r.inputs() = {{"state", state}, {"a", settings[0]}, {"a_prime", settings[1]}, {"b", settings[2]}, {"b_prime", settings[3]}};
  const double value = chsh(s.density, d[0], d[1], d[2], d[3]);
  r.results() = {{"S", number(value)},
                 {"abs_S", number(std::abs(value))},
                 {"exceeds_local_bound", std::abs(value) > 2.0 + 1e-8},
                 {"tsirelson", number(2.0 * std::numbers::sqrt2)}};
  r.check_at_most("tsirelson_bound", std::max(0.0, std::abs(value) - 2.0 * std::numbers::sqrt2), opt.tol);
}

void run_no_signalling(RunReport& r, const std::string& state, const std::vector<std::string>& settings,
                       const std::string& b_spec, const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(state);
  std::vector<Direction> dirs;
  for (const auto& spec : settings) dirs.push_back(io::parse_direction(spec));
  r.inputs() = {{"state", state}, {"settings", settings}, {"b", b_spec}};
  const NoSignallingReport rep = no_signalling_check(s.density, dirs, io::parse_direction(b_spec));
  r.results() = {{"max_trace_distance", number(rep.max_trace_distance)},
                 {"max_marginal_deviation", number(rep.max_marginal_deviation)},
                 {"reduced_second", io::matrix_to_json(reduced_state(s.density, {2, 2}, Subsystem::Second).matrix())}};
  r.check_at_most("max_trace_distance", rep.max_trace_distance, opt.tol);
  r.check_at_most("max_marginal_deviation", rep.max_marginal_deviation, opt.tol);
}

void run_outcome_dependence(RunReport& r, const std::string& state, const std::string& a_spec,
                            const std::string& b_spec, const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(state);
  r.inputs() = {{"state", state}, {"a", a_spec}, {"b", b_spec}};
  const double dep = outcome_dependence(s.density, io::parse_direction(a_spec), io::parse_direction(b_spec));
  r.results() = {{"outcome_dependence", number(dep)}};
  r.check_at_most("in_unit_interval", std::max(0.0, dep - 1.0), opt.tol);
}

void run_remote_state(RunReport& r, const std::string& state, const std::string& a_spec, int outcome,
                      const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(state);
  const PureState& psi = require_pure(s, "remote-state");
  const Direction a = io::parse_direction(a_spec);
  r.inputs() = {{"state", state}, {"a", a_spec}, {"outcome", outcome}};
  const RemoteState rs = conditional_remote_state(psi, a, outcome);
  const Observable obs = spin_observable(a);
  // Ascending spectrum: projectors[0] is -1, projectors[1] is +1.
  const double p_same = obs.spectrum().projectors[outcome == 1 ? 1 : 0].sandwich(rs.remote.amplitudes(), rs.remote.amplitudes()).real();
  r.results() = {{"probability", number(rs.probability)},
                 {"remote_state", io::vector_to_json(rs.remote.amplitudes())},
                 {"remote_p_same", number(p_same)},
                 {"remote_p_opposite", number(1.0 - p_same)}};
  r.check_at_most("remote_norm", std::abs(norm(rs.remote.amplitudes()) - 1.0), opt.tol);
}

json search_json(const AssignmentSearch& s) {
  json j = {{"assignments_searched", s.searched}, {"satisfying", s.satisfying}};
  j["assignment"] = s.assignment ? json(*s.assignment) : json(nullptr);
  return j;
}

void run_ks_square(RunReport& r, const CommonOptions& opt) {
  const ValueAssignmentProblem square = mermin_peres_square();
  const AssignmentSearch full = search_noncontextual_assignment(square);
  const AssignmentSearch relaxed = search_noncontextual_assignment(square.without_context(5));
  r.results() = search_json(full);
  r.results()["labels"] = square.labels();
  r.results()["identity_residual"] = number(square.max_identity_residual());
  r.results()["without_negative_column"] = search_json(relaxed);
  r.check_at_most("identity_residual", square.max_identity_residual(), opt.tol);
  r.check_flag("no_noncontextual_assignment", full.satisfying == 0);
  r.check_flag("relaxed_square_satisfiable", relaxed.satisfying > 0);
}

void run_ks_search(RunReport& r, const std::string& problem_path, const CommonOptions& opt) {
  r.inputs() = {{"problem", problem_path}};
  const ValueAssignmentProblem p = io::problem_from_json(io::read_json_file(problem_path));
  const AssignmentSearch s = search_noncontextual_assignment(p);
  r.results() = search_json(s);
  r.results()["identity_residual"] = number(p.max_identity_residual());
  r.check_at_most("identity_residual", p.max_identity_residual(), opt.tol);
  if (s.assignment) r.check_flag("assignment_satisfies_constraints", satisfies(p, *s.assignment));
}

void run_ghz(RunReport& r, const CommonOptions& opt) {
  const GhzReport g = ghz_contradiction();
  r.results() = {{"operators", g.operators},
                 {"eigenvalues", numbers(g.eigenvalues)},
                 {"eigen_residual", number(g.eigen_residual)},
                 {"sign_product", g.sign_product},
                 {"forced_product", g.forced_product},
                 {"satisfying_assignments", g.satisfying_assignments},
                 {"contradiction", g.contradiction}};
  const std::vector<double> expected = {1.0, -1.0, -1.0, -1.0};
  double worst = g.eigen_residual;
  for (std::size_t k = 0; k < expected.size(); ++k) worst = std::max(worst, std::abs(g.eigenvalues[k] - expected[k]));
  r.check_at_most("eigenvalue_pattern", worst, opt.tol);
  r.check_flag("contradiction", g.contradiction);
}

void run_value_dependence(RunReport& r, const std::string& state, const std::array<std::string, 3>& obs,
                          const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(state);
  r.inputs() = {{"state", state}, {"a", obs[0]}, {"b", obs[1]}, {"c", obs[2]}};
  const ValueDependenceReport rep = value_dependence_demo(s.density, io::parse_observable(obs[0]),
                                                          io::parse_observable(obs[1]), io::parse_observable(obs[2]));
  r.results() = {{"direct", distribution_json(rep.direct)},
                 {"after_b", distribution_json(rep.after_b)},
                 {"after_c", distribution_json(rep.after_c)},
                 {"max_distribution_difference", number(rep.max_distribution_difference)},
                 {"distributions_differ", rep.distributions_differ},
                 {"context_state_distance", number(rep.context_state_distance)},
                 {"context_states_differ", rep.context_states_differ}};
  r.check_at_most("a_statistics_context_independent", rep.max_distribution_difference, opt.tol);
}

void run_mub(RunReport& r, const std::string& state, std::optional<std::uint64_t> samples, double sample_tol,
             const CommonOptions& opt) {
  const io::StateInput s = io::parse_state(state);
  const MubSet mub = mub_qubit();
  r.inputs() = {{"state", state}};
  std::optional<Sampling> sampling;
  if (samples) {
    const std::uint64_t seed = opt.seed.value_or(acceptance::kDefaultSeed);
    sampling = Sampling{*samples, seed};
    r.set_seed(seed);
    r.inputs()["samples"] = *samples;
  }
  const MubStatistics stats = measure_statistics(s.density, mub, sampling);
  const DensityOperator rho = reconstruct(stats, mub);
  const double dist = trace_distance(rho.matrix(), s.density.matrix());
  r.results() = {{"statistics", io::statistics_to_json(stats)},
                 {"reconstructed", io::matrix_to_json(rho.matrix())},
                 {"trace_distance", number(dist)}};
  r.check_at_most("reconstruction_trace_distance", dist, samples ? sample_tol : opt.tol);
}

void run_suite(RunReport& r, const CommonOptions& opt) {
  const std::uint64_t seed = opt.seed.value_or(acceptance::kDefaultSeed);
  r.set_seed(seed);
  json criteria = json::array();
  for (const auto& c : acceptance::run_suite(seed)) {
    criteria.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass()}});
    for (const auto& check : c.checks) {
      r.add_check("C" + std::to_string(c.id) + ": " + check.name, check.pass, check.measured, check.tolerance);
    }
  }
  r.results() = {{"criteria", criteria}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcontext: entanglement, contextual states and contextuality demonstrations"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  CommonOptions opt;
  StateObs so;
  std::string other, probe, measure, problem_path;
  std::vector<std::string> sequence, settings;
  std::string a_spec = "z", b_spec = "z";
  std::array<std::string, 4> chsh_settings = {"theta:90", "theta:0", "theta:45", "theta:135"};
  std::array<std::string, 3> vd_obs;
  int keep = 1, steps = 10, probes = 20, outcome = 1;
  double coupling = 1.0, t_max = 1.0, step = 15.0, sample_tol = 0.05;
  std::optional<std::uint64_t> samples;
  std::string chosen_state = "singlet";

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", opt.tol, "Check tolerance")->capture_default_str();
    sub->add_option("--seed", opt.seed, "Random seed");
    sub->add_option("--out", opt.out, "Also write the JSON report to this path");
    sub->add_flag("--timing", opt.timing, "Include duration_ms in the report");
  };
  const auto add_state = [&](CLI::App* sub, bool required = true) {
    auto* o = sub->add_option("--state", so.state, "Named state or JSON file");
    if (required) o->required();
  };

  std::map<std::string, std::function<void(RunReport&)>> handlers;
  const auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s);
    return s;
  };

  {
    auto* s = sub("schmidt", "Schmidt decomposition of a bipartite pure state");
    add_state(s);
    s->add_option("--dims", so.dims, "Factor dims d1,d2 (default 2,dim/2)");
    handlers["schmidt"] = [&](RunReport& r) { run_schmidt(r, so, opt); };
  }
  {
    auto* s = sub("product-check", "Decide product vs entangled and return factors");
    add_state(s);
    s->add_option("--dims", so.dims, "Factor dims d1,d2");
    handlers["product-check"] = [&](RunReport& r) { run_product_check(r, so, opt); };
  }
  {
    auto* s = sub("reduced", "Reduced state of one subsystem");
    add_state(s);
    s->add_option("--dims", so.dims, "Factor dims d1,d2");
    s->add_option("--keep", keep, "Subsystem to keep (1 or 2)")->capture_default_str();
    handlers["reduced"] = [&](RunReport& r) { run_reduced(r, so, keep, opt); };
  }
  {
    auto* s = sub("total-spin", "Expectation of total spin squared for two spin-1/2 systems");
    add_state(s);
    handlers["total-spin"] = [&](RunReport& r) { run_total_spin(r, so, opt); };
  }
  {
    auto* s = sub("evolve", "Schmidt coefficients of |00> under sz*I + I*sz + g sx*sx");
    s->add_option("--coupling", coupling, "Coupling g")->capture_default_str();
    s->add_option("--t-max", t_max, "Final time")->capture_default_str();
    s->add_option("--steps", steps, "Number of time steps")->capture_default_str();
    s->add_option("--csv", opt.csv, "Write t,c1,c2,rank table");
    handlers["evolve"] = [&](RunReport& r) { run_evolve(r, coupling, t_max, steps, opt); };
  }
  {
    auto* s = sub("luders", "Non-selective Lueders conditionalization W -> W_A");
    add_state(s);
    s->add_option("--observable", so.observable, "Named observable or JSON file")->required();
    handlers["luders"] = [&](RunReport& r) { run_luders(r, so, opt); };
  }
  {
    auto* s = sub("representative", "Representativeness conditions for a pure state and non-degenerate observable");
    add_state(s);
    s->add_option("--observable", so.observable, "Named observable or JSON file")->required();
    handlers["representative"] = [&](RunReport& r) { run_representative(r, so, opt); };
  }
  {
    auto* s = sub("equivalence", "Compare Tr(W A) with Tr(W_A A), optionally for a probe B");
    add_state(s);
    s->add_option("--observable", so.observable, "Context observable A")->required();
    s->add_option("--probe", probe, "Probe observable B");
    handlers["equivalence"] = [&](RunReport& r) { run_equivalence(r, so, probe, opt); };
  }
  {
    auto* s = sub("context-distance", "Trace distance between W_A and W_B");
    add_state(s);
    s->add_option("--observable", so.observable, "Observable A")->required();
    s->add_option("--other", other, "Observable B")->required();
    handlers["context-distance"] = [&](RunReport& r) { run_context_distance(r, so, other, opt); };
  }
  {
    auto* s = sub("sequential", "Apply non-selective Lueders maps in order");
    add_state(s);
    s->add_option("--sequence", sequence, "Observable (repeatable, applied left to right)")->take_all();
    s->add_option("--measure", measure, "Report outcome probabilities of this observable at the end");
    handlers["sequential"] = [&](RunReport& r) { run_sequential(r, so, sequence, measure, opt); };
  }
  {
    auto* s = sub("boolean-lattice", "Check the proposition lattice generated by an observable");
    s->add_option("--observable", so.observable, "Named observable or JSON file")->required();
    s->add_option("--probes", probes, "Random probe states")->capture_default_str();
    handlers["boolean-lattice"] = [&](RunReport& r) { run_boolean_lattice(r, so.observable, probes, opt); };
  }
  {
    auto* s = sub("correlate", "Joint outcome table and E(a,b) for a two-qubit state");
    s->add_option("--state", chosen_state, "Named state or JSON file")->capture_default_str();
    s->add_option("--a", a_spec, "Direction for subsystem 1")->capture_default_str();
    s->add_option("--b", b_spec, "Direction for subsystem 2")->capture_default_str();
    s->add_option("--csv", opt.csv, "Write a theta sweep (a = +z, b in the x-z plane)");
    s->add_option("--step", step, "Sweep step in degrees")->capture_default_str();
    handlers["correlate"] = [&](RunReport& r) { run_correlate(r, chosen_state, a_spec, b_spec, step, opt); };
  }
  {
    auto* s = sub("chsh", "CHSH value S = E(a,b) + E(a,b') + E(a',b) - E(a',b')");
    s->add_option("--state", chosen_state, "Named state or JSON file")->capture_default_str();
    s->add_option("--a", chsh_settings[0], "Setting a")->capture_default_str();
    s->add_option("--a-prime", chsh_settings[1], "Setting a'")->capture_default_str();
    s->add_option("--b", chsh_settings[2], "Setting b")->capture_default_str();
    s->add_option("--b-prime", chsh_settings[3], "Setting b'")->capture_default_str();
    handlers["chsh"] = [&](RunReport& r) { run_chsh(r, chosen_state, chsh_settings, opt); };
  }
  {
    auto* s = sub("no-signalling", "Invariance of subsystem 2 under subsystem 1's setting");
    s->add_option("--state", chosen_state, "Named state or JSON file")->capture_default_str();
    s->add_option("--settings", settings, "Directions for subsystem 1 (repeatable)")->required()->take_all();
    s->add_option("--b", b_spec, "Direction for subsystem 2")->capture_default_str();
    handlers["no-signalling"] = [&](RunReport& r) { run_no_signalling(r, chosen_state, settings, b_spec, opt); };
  }
  {
    auto* s = sub("outcome-dependence", "|p(b=+1 | a=+1) - p(b=+1)|");
    s->add_option("--state", chosen_state, "Named state or JSON file")->capture_default_str();
    s->add_option("--a", a_spec, "Direction for subsystem 1")->capture_default_str();
    s->add_option("--b", b_spec, "Direction for subsystem 2")->capture_default_str();
    handlers["outcome-dependence"] = [&](RunReport& r) { run_outcome_dependence(r, chosen_state, a_spec, b_spec, opt); };
  }
  {
    auto* s = sub("remote-state", "State of subsystem 2 after a selective measurement on subsystem 1");
    s->add_option("--state", chosen_state, "Named state or JSON file")->capture_default_str();
    s->add_option("--a", a_spec, "Measurement direction")->capture_default_str();
    s->add_option("--outcome", outcome, "Outcome +1 or -1")->capture_default_str();
    handlers["remote-state"] = [&](RunReport& r) { run_remote_state(r, chosen_state, a_spec, outcome, opt); };
  }
  {
    sub("ks-square", "Exhaustive noncontextual assignment search on the Mermin-Peres square");
    handlers["ks-square"] = [&](RunReport& r) { run_ks_square(r, opt); };
  }
  {
    auto* s = sub("ks-search", "Exhaustive assignment search for a user problem file");
    s->add_option("--problem", problem_path, "Problem JSON file")->required();
    handlers["ks-search"] = [&](RunReport& r) { run_ks_search(r, problem_path, opt); };
  }
  {
    sub("ghz", "GHZ eigenvalue checks and value-assignment contradiction");
    handlers["ghz"] = [&](RunReport& r) { run_ghz(r, opt); };
  }
  {
    auto* s = sub("value-dependence", "A statistics directly, after B, and after C");
    add_state(s);
    s->add_option("--a", vd_obs[0], "Observable A")->required();
    s->add_option("--b", vd_obs[1], "Observable B (commutes with A)")->required();
    s->add_option("--c", vd_obs[2], "Observable C (commutes with A, not with B)")->required();
    handlers["value-dependence"] = [&](RunReport& r) { run_value_dependence(r, so.state, vd_obs, opt); };
  }
  {
    auto* s = sub("mub-tomography", "Qubit state reconstruction from mutually unbiased bases");
    s->add_option("--state", chosen_state, "Named state or JSON file")->required();
    s->add_option("--samples", samples, "Shots per basis (exact probabilities when omitted)");
    s->add_option("--sample-tol", sample_tol, "Trace-distance bound in sampled mode")->capture_default_str();
    handlers["mub-tomography"] = [&](RunReport& r) { run_mub(r, chosen_state, samples, sample_tol, opt); };
  }
  {
    sub("suite", "Run every acceptance check");
    handlers["suite"] = [&](RunReport& r) { run_suite(r, opt); };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  RunReport report(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    handlers.at(name)(report);
  } catch (const qcontext::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::optional<double> duration;
  if (opt.timing) {
    duration = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  const std::string text = report.to_json(duration).dump(2) + "\n";
  std::cout << text;
  if (!opt.out.empty()) {
    try {
      write_text(opt.out, text);
    } catch (const qcontext::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return report.all_pass() ? kExitOk : kExitCheckFailed;
}

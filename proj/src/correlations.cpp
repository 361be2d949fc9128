#include "qcontext/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qcontext/errors.hpp"
#include "qcontext/tolerances.hpp"

namespace qcontext {

namespace {

constexpr BipartiteDims kQubitPair{2, 2};

void require_two_qubits(std::size_t dim, const char* what) {
  if (dim != 4) {
    throw DimensionError(std::string(what) + ": expected a two-qubit state (dim 4), got dim " +
                         std::to_string(dim));
  }
}

// Projectors indexed by outcome: [0] -> +1, [1] -> -1.
std::array<ComplexMatrix, 2> outcome_projectors(const Direction& d) {
  const Observable obs = spin_observable(d);
  const SpectralDecomposition& sd = obs.spectrum();
  // Ascending eigenvalues: (-1, +1).
  return {sd.projectors[1], sd.projectors[0]};
}

}  // namespace

Direction::Direction(double x, double y, double z) : v_{x, y, z} {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol::kDirection) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "direction must be a unit vector (norm = " << n << ")";
    throw InvalidValueError(msg.str());
  }
}

Direction Direction::normalized(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidValueError("cannot normalize a zero direction");
  return Direction(x / n, y / n, z / n);
}

Direction Direction::spherical(double theta, double phi) {
  return normalized(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
}

Direction Direction::in_xz_plane(double degrees) {
  const double rad = degrees * std::numbers::pi / 180.0;
  return normalized(std::sin(rad), 0.0, std::cos(rad));
}

double Direction::dot(const Direction& other) const {
  return v_[0] * other.v_[0] + v_[1] * other.v_[1] + v_[2] * other.v_[2];
}

Observable spin_observable(const Direction& d) {
  ComplexMatrix m = Complex(d.x()) * pauli::x() + Complex(d.y()) * pauli::y() + Complex(d.z()) * pauli::z();
  std::ostringstream label;
  label.precision(12);
  label << "spin(" << d.x() << "," << d.y() << "," << d.z() << ")";
  return Observable(std::move(m), label.str());
}

CorrelationRecord joint_probabilities(const DensityOperator& w, const Direction& a, const Direction& b) {
  require_two_qubits(w.dim(), "joint_probabilities");
  const auto pa = outcome_projectors(a);
  const auto pb = outcome_projectors(b);
  CorrelationRecord rec{a, b, {}, {}, {}, 0.0};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      rec.joint[i][j] = std::clamp(w.expectation(tensor(pa[i], pb[j])).real(), 0.0, 1.0);
    }
  }
  double total = 0.0;
  for (const auto& row : rec.joint) {
    for (double p : row) total += p;
  }
  for (auto& row : rec.joint) {
    for (double& p : row) p /= total;
  }
  for (int i = 0; i < 2; ++i) {
    rec.marginal_a[i] = rec.joint[i][0] + rec.joint[i][1];
    rec.marginal_b[i] = rec.joint[0][i] + rec.joint[1][i];
  }
  rec.expectation = rec.joint[0][0] - rec.joint[0][1] - rec.joint[1][0] + rec.joint[1][1];
  return rec;
}

double correlation(const DensityOperator& w, const Direction& a, const Direction& b) {
  return joint_probabilities(w, a, b).expectation;
}

RemoteState conditional_remote_state(const PureState& psi, const Direction& a, int outcome) {
  require_two_qubits(psi.dim(), "conditional_remote_state");
  if (outcome != 1 && outcome != -1) throw InvalidValueError("outcome must be +1 or -1");
  const EigenSystem es = eigh(spin_observable(a).matrix());
  const ComplexVector& eigvec = outcome == 1 ? es.vectors[1] : es.vectors[0];

  // (<a_outcome| (x) I) |psi>
  ComplexVector remote(2);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < 2; ++i) remote[j] += std::conj(eigvec[i]) * psi[i * 2 + j];
  }
  const double probability = std::norm(remote[0]) + std::norm(remote[1]);
  if (probability <= tol::kConditioning) {
    std::ostringstream msg;
    msg << "conditional_remote_state: outcome " << outcome << " has probability " << probability;
    throw PreconditionError(msg.str());
  }
  return {probability, PureState::normalized(std::move(remote))};
}

double chsh(const DensityOperator& w, const Direction& a, const Direction& a_prime, const Direction& b,
            const Direction& b_prime) {
  return correlation(w, a, b) + correlation(w, a, b_prime) + correlation(w, a_prime, b) -
         correlation(w, a_prime, b_prime);
}

NoSignallingReport no_signalling_check(const DensityOperator& w, std::span<const Direction> settings_for_s1,
                                       const Direction& b) {
  require_two_qubits(w.dim(), "no_signalling_check");
  if (settings_for_s1.empty()) throw PreconditionError("no_signalling_check: settings list is empty");
  std::vector<DensityOperator> remote_states;
  std::vector<std::array<double, 2>> marginals;
  const ComplexMatrix id = ComplexMatrix::identity(2);
  for (const Direction& a : settings_for_s1) {
    const Observable local(tensor(spin_observable(a).matrix(), id));
    remote_states.push_back(reduced_state(luders_map(w, local), kQubitPair, Subsystem::Second));
    marginals.push_back(joint_probabilities(w, a, b).marginal_b);
  }
  NoSignallingReport report{0.0, 0.0};
  for (std::size_t i = 0; i < remote_states.size(); ++i) {
    for (std::size_t j = i + 1; j < remote_states.size(); ++j) {
      report.max_trace_distance = std::max(
          report.max_trace_distance, trace_distance(remote_states[i].matrix(), remote_states[j].matrix()));
      report.max_marginal_deviation =
          std::max(report.max_marginal_deviation, std::abs(marginals[i][0] - marginals[j][0]));
    }
  }
  return report;
}

double outcome_dependence(const DensityOperator& w, const Direction& a, const Direction& b) {
  const CorrelationRecord rec = joint_probabilities(w, a, b);
  if (rec.marginal_a[0] <= tol::kConditioning) {
    throw PreconditionError("outcome_dependence: conditioning event a = +1 has zero probability");
  }
  return std::abs(rec.joint[0][0] / rec.marginal_a[0] - rec.marginal_b[0]);
}

std::vector<CorrelationRecord> correlation_sweep(const DensityOperator& w, std::span<const double> thetas_degrees) {
  std::vector<CorrelationRecord> rows;
  rows.reserve(thetas_degrees.size());
  const Direction a(0.0, 0.0, 1.0);
  for (double theta : thetas_degrees) rows.push_back(joint_probabilities(w, a, Direction::in_xz_plane(theta)));
  return rows;
}

void write_correlation_csv(std::ostream& os, std::span<const double> thetas_degrees,
                           std::span<const CorrelationRecord> rows) {
  if (thetas_degrees.size() != rows.size()) throw DimensionError("correlation csv: row count mismatch");
  os << "theta_degrees,E,p_pp,p_pm,p_mp,p_mm\n";
  char buf[256];
  // Adding +0.0 turns a negative zero into 0 so tables diff cleanly.
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const CorrelationRecord& r = rows[k];
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", thetas_degrees[k], r.expectation + 0.0,
                  r.joint[0][0], r.joint[0][1], r.joint[1][0], r.joint[1][1]);
    os << buf;
  }
}

}  // namespace qcontext

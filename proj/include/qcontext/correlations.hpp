#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "qcontext/context.hpp"
#include "qcontext/states.hpp"

namespace qcontext {

/// Unit vector in R^3 (norm 1 within 1e-12).
class Direction {
 public:
  /// Throws InvalidValueError carrying the norm when |v| != 1.
  Direction(double x, double y, double z);
  static Direction normalized(double x, double y, double z);
  /// Polar angle theta from +z, azimuth phi from +x, in radians.
  static Direction spherical(double theta, double phi);
  /// Angle in the x-z plane measured from +z toward +x, in degrees.
  static Direction in_xz_plane(double degrees);

  double x() const { return v_[0]; }
  double y() const { return v_[1]; }
  double z() const { return v_[2]; }
  double dot(const Direction& other) const;

 private:
  std::array<double, 3> v_;
};

/// d . sigma, eigenvalues -1 and +1. Spin component along d is hbar/2 times
/// the outcome.
Observable spin_observable(const Direction& d);

/// Outcome index: 0 is +1, 1 is -1.
struct CorrelationRecord {
  Direction a;
  Direction b;
  std::array<std::array<double, 2>, 2> joint;
  std::array<double, 2> marginal_a;
  std::array<double, 2> marginal_b;
  double expectation;
};

CorrelationRecord joint_probabilities(const DensityOperator& w, const Direction& a, const Direction& b);

/// E(a, b) over +-1 outcomes.
double correlation(const DensityOperator& w, const Direction& a, const Direction& b);

struct RemoteState {
  double probability;
  PureState remote;
};

/// Selective measurement of a.sigma on subsystem 1 with result `outcome`
/// (+1 or -1); returns its probability and the renormalized state of
/// subsystem 2. Throws PreconditionError when the outcome probability is
/// at most 1e-12.
RemoteState conditional_remote_state(const PureState& psi, const Direction& a, int outcome);

/// S = E(a,b) + E(a,b') + E(a',b) - E(a',b')
double chsh(const DensityOperator& w, const Direction& a, const Direction& a_prime, const Direction& b,
            const Direction& b_prime);

struct NoSignallingReport {
  /// Max pairwise trace distance between S2 reduced states after S1's
  /// non-selective measurement along each setting.
  double max_trace_distance;
  /// Max pairwise difference of S2's outcome marginals for setting b.
  double max_marginal_deviation;
};

NoSignallingReport no_signalling_check(const DensityOperator& w, std::span<const Direction> settings_for_s1,
                                       const Direction& b);

/// |p(b=+1 | a=+1) - p(b=+1)|. Throws PreconditionError when p(a=+1) <= 1e-12.
double outcome_dependence(const DensityOperator& w, const Direction& a, const Direction& b);

/// One row per angle: a = +z, b in the x-z plane at theta degrees.
std::vector<CorrelationRecord> correlation_sweep(const DensityOperator& w, std::span<const double> thetas_degrees);

/// Columns theta_degrees,E,p_pp,p_pm,p_mp,p_mm.
void write_correlation_csv(std::ostream& os, std::span<const double> thetas_degrees,
                           std::span<const CorrelationRecord> rows);

}  // namespace qcontext

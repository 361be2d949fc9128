#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qcontext/context.hpp"
#include "qcontext/contextuality.hpp"
#include "qcontext/correlations.hpp"
#include "qcontext/mub.hpp"
#include "qcontext/states.hpp"

namespace qcontext::io {

using nlohmann::json;

/// Rounds to 12 significant digits and maps -0 to 0. All report numbers go
/// through this so output is stable across platforms.
double round12(double value);
json number(double value);

/// {"dim": n, "re": [n*n row-major], "im": [...]}
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

/// {"dim": n, "re": [n], "im": [n]}
json vector_to_json(std::span<const Complex> v);
PureState pure_state_from_json(const json& j);

/// A state given on the command line: always a density operator, plus the
/// vector when the input was pure.
struct StateInput {
  DensityOperator density;
  std::optional<PureState> pure;
};

/// Named: singlet, ghz, zero, one, plus, minus, plus_i, minus_i,
/// product:<i>,<j>, basis:<dim>,<index>, amplitudes:<a0>,<a1>,... (real,
/// normalized), mixed:<dim>, antiparallel_mixture.
/// Anything else is read as a JSON file whose "re" holds either n
/// amplitudes (pure state) or n*n entries (density matrix).
StateInput parse_state(std::string_view spec);
StateInput state_from_json(const json& j);

/// Observable file: matrix format plus "label".
json observable_to_json(const Observable& o);
Observable observable_from_json(const json& j);
/// Named: sigma_x, sigma_y, sigma_z, spin:<ax>,<ay>,<az> (normalized),
/// pauli:<XYZI string>, diag:<v1>,<v2>,..., identity:<dim>; otherwise a
/// JSON file.
Observable parse_observable(std::string_view spec);

/// x, y, z (optionally signed: -x), theta:<degrees> in the x-z plane, or
/// <ax>,<ay>,<az> (normalized).
Direction parse_direction(std::string_view spec);

/// {"observables": [matrix...], "labels": [...], "contexts": [[i...]...],
/// "signs": [+-1...]}
json problem_to_json(const ValueAssignmentProblem& p);
ValueAssignmentProblem problem_from_json(const json& j);

/// {"dim": d, "tables": [[p...]...], "samples": N|null, "seed": s|null}
json statistics_to_json(const MubStatistics& s);
MubStatistics statistics_from_json(const json& j);

json read_json_file(const std::string& path);

}  // namespace qcontext::io

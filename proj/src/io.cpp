#include "qcontext/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qcontext/errors.hpp"

namespace qcontext::io {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& text, std::string_view context) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(value)) {
    throw InvalidValueError("invalid number '" + text + "' in '" + std::string(context) + "'");
  }
  return value;
}

std::size_t parse_index(const std::string& text, std::string_view context) {
  const double value = parse_double(text, context);
  if (value < 0 || value != std::floor(value)) {
    throw InvalidValueError("expected a non-negative integer, got '" + text + "' in '" + std::string(context) + "'");
  }
  return static_cast<std::size_t>(value);
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

std::vector<double> real_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InvalidValueError(std::string("malformed input: missing array \"") + key + "\"");
  }
  std::vector<double> out;
  for (const json& x : j.at(key)) {
    if (!x.is_number()) throw InvalidValueError(std::string("malformed input: non-numeric entry in \"") + key + "\"");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<Complex> complex_entries(const json& j) {
  const std::vector<double> re = real_array(j, "re");
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) im = real_array(j, "im");
  if (im.size() != re.size()) throw InvalidValueError("malformed input: \"re\" and \"im\" differ in length");
  std::vector<Complex> out(re.size());
  for (std::size_t k = 0; k < re.size(); ++k) out[k] = {re[k], im[k]};
  return out;
}

std::size_t dim_field(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.at("dim").is_number_integer() || j.at("dim").get<long long>() < 1) {
    throw InvalidValueError("malformed input: missing positive integer \"dim\"");
  }
  return j.at("dim").get<std::size_t>();
}

bool looks_like_file(std::string_view spec) {
  std::ifstream in{std::string(spec)};
  return in.good();
}

ComplexMatrix pauli_letter(char c) {
  switch (c) {
    case 'I': return pauli::i2();
    case 'X': return pauli::x();
    case 'Y': return pauli::y();
    case 'Z': return pauli::z();
    default: throw InvalidValueError(std::string("unknown Pauli letter '") + c + "'");
  }
}

}  // namespace

double round12(double value) {
  if (!std::isfinite(value)) return value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  const double rounded = std::strtod(buf, nullptr);
  return rounded == 0.0 ? 0.0 : rounded;
}

json number(double value) { return round12(value); }

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (const Complex& z : m.entries()) {
    re.push_back(number(z.real()));
    im.push_back(number(z.imag()));
  }
  return {{"dim", m.dim()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const std::size_t n = dim_field(j);
  std::vector<Complex> entries = complex_entries(j);
  if (entries.size() != n * n) {
    throw DimensionError("malformed matrix: dim " + std::to_string(n) + " needs " + std::to_string(n * n) +
                         " entries, got " + std::to_string(entries.size()));
  }
  return ComplexMatrix(n, std::move(entries));
}

json vector_to_json(std::span<const Complex> v) {
  json re = json::array();
  json im = json::array();
  for (const Complex& z : v) {
    re.push_back(number(z.real()));
    im.push_back(number(z.imag()));
  }
  return {{"dim", v.size()}, {"re", re}, {"im", im}};
}

PureState pure_state_from_json(const json& j) {
  const std::size_t n = dim_field(j);
  std::vector<Complex> amps = complex_entries(j);
  if (amps.size() != n) {
    throw DimensionError("malformed state: dim " + std::to_string(n) + " needs " + std::to_string(n) +
                         " amplitudes, got " + std::to_string(amps.size()));
  }
  return PureState(std::move(amps));
}

StateInput state_from_json(const json& j) {
  const std::size_t n = dim_field(j);
  const std::size_t count = complex_entries(j).size();
  if (count == n) {
    PureState psi = pure_state_from_json(j);
    return {DensityOperator::from_pure(psi), psi};
  }
  if (count == n * n) return {DensityOperator(matrix_from_json(j)), std::nullopt};
  throw DimensionError("malformed state: dim " + std::to_string(n) + " needs " + std::to_string(n) + " or " +
                       std::to_string(n * n) + " entries, got " + std::to_string(count));
}

StateInput parse_state(std::string_view spec) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  const auto pure = [](PureState psi) { return StateInput{DensityOperator::from_pure(psi), psi}; };

  if (spec == "singlet") return pure(make_singlet());
  if (spec == "ghz") return pure(make_ghz());
  if (spec == "zero") return pure(PureState::basis(2, 0));
  if (spec == "one") return pure(PureState::basis(2, 1));
  if (spec == "plus") return pure(PureState({r, r}));
  if (spec == "minus") return pure(PureState({r, -r}));
  if (spec == "plus_i") return pure(PureState({r, r * i}));
  if (spec == "minus_i") return pure(PureState({r, -r * i}));
  if (spec == "antiparallel_mixture") {
    // 1/2 (|01><01| + |10><10|): same reduced states as the singlet.
    const ComplexMatrix m = 0.5 * (PureState::basis(4, 1).projector() + PureState::basis(4, 2).projector());
    return {DensityOperator(m), std::nullopt};
  }
  if (starts_with(spec, "product:")) {
    const auto parts = split(spec.substr(8), ',');
    if (parts.size() != 2) throw InvalidValueError("product state needs two indices: product:<i>,<j>");
    const std::size_t a = parse_index(parts[0], spec);
    const std::size_t b = parse_index(parts[1], spec);
    return pure(make_product(PureState::basis(2, a), PureState::basis(2, b)));
  }
  if (starts_with(spec, "amplitudes:")) {
    ComplexVector amps;
    for (const std::string& part : split(spec.substr(11), ',')) amps.emplace_back(parse_double(part, spec));
    return pure(PureState::normalized(std::move(amps)));
  }
  if (starts_with(spec, "basis:")) {
    const auto parts = split(spec.substr(6), ',');
    if (parts.size() != 2) throw InvalidValueError("basis state needs basis:<dim>,<index>");
    return pure(PureState::basis(parse_index(parts[0], spec), parse_index(parts[1], spec)));
  }
  if (starts_with(spec, "mixed:")) {
    return {DensityOperator::maximally_mixed(parse_index(std::string(spec.substr(6)), spec)), std::nullopt};
  }
  if (!looks_like_file(spec)) {
    throw InvalidValueError("unknown state '" + std::string(spec) + "' (not a named state and no such file)");
  }
  return state_from_json(read_json_file(std::string(spec)));
}

json observable_to_json(const Observable& o) {
  json j = matrix_to_json(o.matrix());
  j["label"] = o.label();
  return j;
}

Observable observable_from_json(const json& j) {
  std::string label;
  if (j.contains("label") && j.at("label").is_string()) label = j.at("label").get<std::string>();
  return Observable(matrix_from_json(j), label);
}

Observable parse_observable(std::string_view spec) {
  const std::string name(spec);
  if (spec == "sigma_x") return Observable(pauli::x(), name);
  if (spec == "sigma_y") return Observable(pauli::y(), name);
  if (spec == "sigma_z") return Observable(pauli::z(), name);
  if (starts_with(spec, "spin:")) {
    const auto parts = split(spec.substr(5), ',');
    if (parts.size() != 3) throw InvalidValueError("spin observable needs spin:<ax>,<ay>,<az>");
    const Direction d = Direction::normalized(parse_double(parts[0], spec), parse_double(parts[1], spec),
                                              parse_double(parts[2], spec));
    Observable o = spin_observable(d);
    return Observable(o.matrix(), name);
  }
  if (starts_with(spec, "pauli:")) {
    const std::string_view letters = spec.substr(6);
    if (letters.empty()) throw InvalidValueError("pauli observable needs at least one letter");
    ComplexMatrix m = pauli_letter(letters[0]);
    for (std::size_t k = 1; k < letters.size(); ++k) m = tensor(m, pauli_letter(letters[k]));
    return Observable(std::move(m), name);
  }
  if (starts_with(spec, "diag:")) {
    std::vector<double> values;
    for (const std::string& part : split(spec.substr(5), ',')) values.push_back(parse_double(part, spec));
    return Observable(ComplexMatrix::diagonal(values), name);
  }
  if (starts_with(spec, "identity:")) {
    return Observable(ComplexMatrix::identity(parse_index(std::string(spec.substr(9)), spec)), name);
  }
  if (!looks_like_file(spec)) {
    throw InvalidValueError("unknown observable '" + name + "' (not a named observable and no such file)");
  }
  return observable_from_json(read_json_file(name));
}

Direction parse_direction(std::string_view spec) {
  std::string_view body = spec;
  double sign = 1.0;
  if (!body.empty() && (body[0] == '-' || body[0] == '+') && body.size() == 2) {
    sign = body[0] == '-' ? -1.0 : 1.0;
    body = body.substr(1);
  }
  if (body == "x") return Direction(sign, 0.0, 0.0);
  if (body == "y") return Direction(0.0, sign, 0.0);
  if (body == "z") return Direction(0.0, 0.0, sign);
  if (starts_with(spec, "theta:")) return Direction::in_xz_plane(parse_double(std::string(spec.substr(6)), spec));
  const auto parts = split(spec, ',');
  if (parts.size() != 3) {
    throw InvalidValueError("unknown direction '" + std::string(spec) + "' (use x|y|z, theta:<deg> or ax,ay,az)");
  }
  return Direction::normalized(parse_double(parts[0], spec), parse_double(parts[1], spec),
                               parse_double(parts[2], spec));
}

json problem_to_json(const ValueAssignmentProblem& p) {
  json obs = json::array();
  for (const ComplexMatrix& m : p.observables()) obs.push_back(matrix_to_json(m));
  return {{"observables", obs}, {"labels", p.labels()}, {"contexts", p.contexts()}, {"signs", p.signs()}};
}

ValueAssignmentProblem problem_from_json(const json& j) {
  try {
    std::vector<ComplexMatrix> observables;
    for (const json& m : j.at("observables")) observables.push_back(matrix_from_json(m));
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    auto contexts = j.at("contexts").get<std::vector<std::vector<std::size_t>>>();
    auto signs = j.at("signs").get<std::vector<int>>();
    return ValueAssignmentProblem(std::move(observables), std::move(labels), std::move(contexts), std::move(signs));
  } catch (const json::exception& e) {
    throw InvalidValueError(std::string("malformed problem file: ") + e.what());
  }
}

json statistics_to_json(const MubStatistics& s) {
  json tables = json::array();
  for (const auto& t : s.tables) {
    json row = json::array();
    for (double p : t) row.push_back(number(p));
    tables.push_back(row);
  }
  json j = {{"dim", s.dim}, {"tables", tables}};
  j["samples"] = s.samples ? json(*s.samples) : json(nullptr);
  j["seed"] = s.seed ? json(*s.seed) : json(nullptr);
  return j;
}

MubStatistics statistics_from_json(const json& j) {
  try {
    MubStatistics s{dim_field(j), j.at("tables").get<std::vector<std::vector<double>>>(), std::nullopt, std::nullopt};
    if (j.contains("samples") && !j.at("samples").is_null()) s.samples = j.at("samples").get<std::uint64_t>();
    if (j.contains("seed") && !j.at("seed").is_null()) s.seed = j.at("seed").get<std::uint64_t>();
    return s;
  } catch (const json::exception& e) {
    throw InvalidValueError(std::string("malformed statistics file: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidValueError("cannot open file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidValueError("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace qcontext::io

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qcontext::acceptance {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// One measured quantity compared against its threshold.
struct Check {
  std::string name;
  bool pass;
  double measured;
  double tolerance;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Check> checks;

  bool pass() const;
};

/// The twelve end-to-end acceptance criteria, evaluated with a seeded
/// generator. Deterministic for a fixed seed.
std::vector<Criterion> run_suite(std::uint64_t seed = kDefaultSeed);

/// Singlet anticorrelation along shared axes and opposite remote outcomes.
Criterion perfect_anticorrelation(std::uint64_t seed);
Criterion singlet_correlation_law(std::uint64_t seed);
Criterion chsh_bounds(std::uint64_t seed);
Criterion no_signalling(std::uint64_t seed);
Criterion luders_forms(std::uint64_t seed);
Criterion statistical_equivalence_checks(std::uint64_t seed);
Criterion context_distinctness(std::uint64_t seed);
Criterion mermin_peres();
Criterion ghz();
Criterion holism_witness();
Criterion interaction_dynamics(std::uint64_t seed);
Criterion mub_tomography(std::uint64_t seed);

}  // namespace qcontext::acceptance

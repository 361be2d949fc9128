#include "qcontext/mub.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qcontext/errors.hpp"
#include "qcontext/spectral.hpp"

namespace qcontext {

namespace {

constexpr double kMubTol = 1e-10;

}  // namespace

MubSet::MubSet(std::vector<std::vector<ComplexVector>> bases) : bases_(std::move(bases)) {
  if (bases_.empty() || bases_.front().empty()) throw InvalidValueError("MUB set needs at least one basis");
  const std::size_t d = bases_.front().size();
  if (bases_.size() != d + 1) {
    throw InvalidValueError("MUB set for dim " + std::to_string(d) + " needs " + std::to_string(d + 1) +
                            " bases, got " + std::to_string(bases_.size()));
  }
  const double unbiased = 1.0 / static_cast<double>(d);
  for (std::size_t b = 0; b < bases_.size(); ++b) {
    if (bases_[b].size() != d) throw DimensionError("MUB basis " + std::to_string(b) + " has wrong size");
    for (const ComplexVector& v : bases_[b]) {
      if (v.size() != d) throw DimensionError("MUB vector has wrong length");
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) {
        const double expected = i == j ? 1.0 : 0.0;
        if (std::abs(inner(bases_[b][i], bases_[b][j]) - expected) > kMubTol) {
          throw InvalidValueError("MUB basis " + std::to_string(b) + " is not orthonormal");
        }
      }
    }
    for (std::size_t c = b + 1; c < bases_.size(); ++c) {
      for (const ComplexVector& e : bases_[b]) {
        for (const ComplexVector& f : bases_[c]) {
          if (std::abs(std::norm(inner(e, f)) - unbiased) > kMubTol) {
            throw InvalidValueError("MUB bases " + std::to_string(b) + " and " + std::to_string(c) +
                                    " are not unbiased");
          }
        }
      }
    }
  }
}

MubSet mub_qubit() {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  return MubSet({
      {{1.0, 0.0}, {0.0, 1.0}},
      {{r, r}, {r, -r}},
      {{r, r * i}, {r, -r * i}},
  });
}

MubStatistics measure_statistics(const DensityOperator& w, const MubSet& m, std::optional<Sampling> sampling) {
  if (w.dim() != m.dim()) {
    throw DimensionError("measure_statistics: state dim " + std::to_string(w.dim()) + " vs MUB dim " +
                         std::to_string(m.dim()));
  }
  MubStatistics stats{m.dim(), {}, std::nullopt, std::nullopt};
  for (const auto& basis : m.bases()) {
    std::vector<double> table;
    for (const ComplexVector& e : basis) table.push_back(std::max(0.0, w.matrix().sandwich(e, e).real()));
    stats.tables.push_back(std::move(table));
  }
  if (!sampling) return stats;
  if (sampling->shots == 0) throw InvalidValueError("measure_statistics: sample count must be positive");

  std::mt19937_64 rng(sampling->seed);
  for (auto& table : stats.tables) {
    // Multinomial draw as a chain of conditional binomials.
    std::uint64_t remaining = sampling->shots;
    double mass = 1.0;
    std::vector<double> freq(table.size());
    for (std::size_t k = 0; k + 1 < table.size(); ++k) {
      const double p = mass > 0.0 ? std::clamp(table[k] / mass, 0.0, 1.0) : 0.0;
      std::binomial_distribution<std::uint64_t> draw(remaining, p);
      const std::uint64_t count = draw(rng);
      freq[k] = static_cast<double>(count) / static_cast<double>(sampling->shots);
      remaining -= count;
      mass -= table[k];
    }
    freq.back() = static_cast<double>(remaining) / static_cast<double>(sampling->shots);
    table = std::move(freq);
  }
  stats.samples = sampling->shots;
  stats.seed = sampling->seed;
  return stats;
}

ComplexMatrix linear_inversion(const MubStatistics& stats, const MubSet& m) {
  if (stats.dim != m.dim()) throw DimensionError("reconstruct: statistics dim does not match MUB dim");
  if (stats.tables.size() != m.bases().size()) {
    std::ostringstream msg;
    msg << "reconstruct: expected " << m.bases().size() << " basis tables, got " << stats.tables.size();
    throw InvalidValueError(msg.str());
  }
  ComplexMatrix rho(m.dim());
  for (std::size_t b = 0; b < m.bases().size(); ++b) {
    if (stats.tables[b].size() != m.dim()) {
      throw InvalidValueError("reconstruct: table " + std::to_string(b) + " has wrong length");
    }
    for (std::size_t k = 0; k < m.dim(); ++k) rho += stats.tables[b][k] * ComplexMatrix::outer(m.bases()[b][k]);
  }
  return rho - ComplexMatrix::identity(m.dim());
}

DensityOperator reconstruct(const MubStatistics& stats, const MubSet& m) {
  const ComplexMatrix raw = linear_inversion(stats, m).hermitian_part();
  const EigenSystem es = eigh(raw);
  double total = 0.0;
  for (double ev : es.values) total += std::max(ev, 0.0);
  if (!(total > 0.0)) throw InvalidValueError("reconstruct: statistics yield no positive part");
  ComplexMatrix rho(m.dim());
  for (std::size_t k = 0; k < es.values.size(); ++k) {
    rho += (std::max(es.values[k], 0.0) / total) * ComplexMatrix::outer(es.vectors[k]);
  }
  return DensityOperator(rho.hermitian_part());
}

}  // namespace qcontext

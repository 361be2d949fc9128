#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcontext/states.hpp"

namespace qcontext {

/// d + 1 mutually unbiased orthonormal bases of C^d. The constructor checks
/// orthonormality and |<e, f>|^2 = 1/d across bases to 1e-10.
class MubSet {
 public:
  explicit MubSet(std::vector<std::vector<ComplexVector>> bases);

  std::size_t dim() const { return bases_.front().size(); }
  const std::vector<std::vector<ComplexVector>>& bases() const { return bases_; }

 private:
  std::vector<std::vector<ComplexVector>> bases_;
};

/// sigma_z, sigma_x, sigma_y eigenbases (in that order), +1 eigenvector first.
MubSet mub_qubit();

struct Sampling {
  std::uint64_t shots;
  std::uint64_t seed;
};

/// tables[b][k] = p(k | basis b).
struct MubStatistics {
  std::size_t dim;
  std::vector<std::vector<double>> tables;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
};

/// Exact Born probabilities, or multinomial frequencies drawn from a
/// std::mt19937_64 seeded with `sampling->seed` when sampling is given.
MubStatistics measure_statistics(const DensityOperator& w, const MubSet& m,
                                 std::optional<Sampling> sampling = std::nullopt);

/// rho = sum_{b,k} p(k|b) |e_bk><e_bk| - I, then clipped to the nearest
/// valid density operator (negative eigenvalues to 0, trace renormalized).
DensityOperator reconstruct(const MubStatistics& stats, const MubSet& m);

/// The unprojected linear inversion.
ComplexMatrix linear_inversion(const MubStatistics& stats, const MubSet& m);

}  // namespace qcontext

#pragma once

#include <cstdint>
#include <random>

#include "qcontext/correlations.hpp"
#include "qcontext/states.hpp"

namespace qcontext {

using Rng = std::mt19937_64;

/// Haar-random unit vector (normalized complex Gaussian).
PureState random_pure_state(Rng& rng, std::size_t dim);
/// G G^dagger / Tr for a complex Ginibre matrix G; full rank almost surely.
DensityOperator random_density(Rng& rng, std::size_t dim);
/// (G + G^dagger) / 2 with Gaussian entries.
ComplexMatrix random_hermitian(Rng& rng, std::size_t dim);
/// Gaussian entries, no symmetry.
ComplexMatrix random_matrix(Rng& rng, std::size_t dim);
Direction random_direction(Rng& rng);

}  // namespace qcontext

#include "qcontext/random.hpp"

namespace qcontext {

namespace {

Complex gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

}  // namespace

PureState random_pure_state(Rng& rng, std::size_t dim) {
  ComplexVector v(dim);
  for (Complex& z : v) z = gaussian(rng);
  return PureState::normalized(std::move(v));
}

ComplexMatrix random_matrix(Rng& rng, std::size_t dim) {
  ComplexMatrix g(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = gaussian(rng);
  }
  return g;
}

DensityOperator random_density(Rng& rng, std::size_t dim) {
  const ComplexMatrix g = random_matrix(rng, dim);
  ComplexMatrix w = g * g.adjoint();
  w *= 1.0 / w.trace().real();
  return DensityOperator(w.hermitian_part());
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t dim) { return random_matrix(rng, dim).hermitian_part(); }

Direction random_direction(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double x = n(rng);
  const double y = n(rng);
  const double z = n(rng);
  return Direction::normalized(x, y, z);
}

}  // namespace qcontext

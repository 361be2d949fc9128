#include <gtest/gtest.h>

#include <cmath>

#include "qcontext/errors.hpp"
#include "qcontext/random.hpp"
#include "qcontext/spectral.hpp"
#include "qcontext/states.hpp"

using namespace qcontext;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

ComplexVector swap_subsystems(std::span<const Complex> v) {
  return {v[0], v[2], v[1], v[3]};
}

void expect_orthonormal(const std::vector<ComplexVector>& basis, double tol) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      EXPECT_LT(std::abs(inner(basis[i], basis[j]) - Complex(i == j ? 1.0 : 0.0)), tol);
    }
  }
}

// Fine-step RK4 integration of i d/dt psi = h psi.
ComplexVector rk4(const ComplexMatrix& h, ComplexVector psi, double t, int steps) {
  const double dt = t / steps;
  const Complex minus_i(0.0, -1.0);
  const auto f = [&](const ComplexVector& v) {
    ComplexVector out = h.apply(v);
    for (Complex& z : out) z *= minus_i;
    return out;
  };
  const auto axpy = [](const ComplexVector& x, double a, const ComplexVector& y) {
    ComplexVector out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] + a * y[k];
    return out;
  };
  for (int s = 0; s < steps; ++s) {
    const ComplexVector k1 = f(psi);
    const ComplexVector k2 = f(axpy(psi, dt / 2, k1));
    const ComplexVector k3 = f(axpy(psi, dt / 2, k2));
    const ComplexVector k4 = f(axpy(psi, dt, k3));
    for (std::size_t k = 0; k < psi.size(); ++k) psi[k] += dt / 6 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
  }
  return psi;
}

}  // namespace

TEST(PureState, Validation) {
  EXPECT_THROW(PureState({1.0, 1.0}), InvalidValueError);
  EXPECT_THROW(PureState::normalized({0.0, 0.0}), InvalidValueError);
  EXPECT_THROW(PureState::basis(2, 2), DimensionError);
  EXPECT_NO_THROW(PureState({kR, kR}));
}

TEST(DensityOperator, Validation) {
  EXPECT_THROW(DensityOperator(ComplexMatrix{{1, 1}, {0, 0}}), InvalidValueError);
  EXPECT_THROW(DensityOperator(ComplexMatrix{{0.6, 0}, {0, 0.6}}), InvalidValueError);
  EXPECT_THROW(DensityOperator(ComplexMatrix{{1.5, 0}, {0, -0.5}}), InvalidValueError);
  EXPECT_NEAR(DensityOperator::maximally_mixed(4).purity(), 0.25, 1e-15);
}

TEST(Schmidt, BasisProductHasRankOne) {
  const SchmidtDecomposition sd = schmidt(PureState::basis(4, 0), {2, 2});
  EXPECT_EQ(sd.rank(), 1u);
  EXPECT_NEAR(sd.coefficients[0], 1.0, 1e-15);
}

TEST(Schmidt, SingletHasEqualCoefficients) {
  const SchmidtDecomposition sd = schmidt(make_singlet(), {2, 2});
  ASSERT_EQ(sd.coefficients.size(), 2u);
  EXPECT_NEAR(sd.coefficients[0], kR, 1e-12);
  EXPECT_NEAR(sd.coefficients[1], kR, 1e-12);
  EXPECT_EQ(sd.rank(), 2u);
  EXPECT_GT(fidelity(make_singlet(), sd.reconstruct()), 1.0 - 1e-9);
}

TEST(Schmidt, FactorizableSuperpositionHasRankOne) {
  const PureState psi({kR, kR, 0.0, 0.0});
  const ProductCheck pc = is_product(psi, {2, 2});
  ASSERT_TRUE(pc.is_product);
  const ComplexVector zero{1.0, 0.0}, plus{kR, kR};
  EXPECT_NEAR(fidelity(pc.factors->first, zero), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(pc.factors->second, plus), 1.0, 1e-12);
}

TEST(Schmidt, UnequalFactorDimensions) {
  Rng rng(20);
  for (auto dims : {BipartiteDims{2, 3}, BipartiteDims{3, 2}, BipartiteDims{4, 2}, BipartiteDims{1, 5}}) {
    const PureState psi = random_pure_state(rng, dims.total());
    const SchmidtDecomposition sd = schmidt(psi, dims);
    const std::size_t count = std::min(dims.first, dims.second);
    ASSERT_EQ(sd.coefficients.size(), count);
    double sum = 0.0;
    for (double c : sd.coefficients) sum += c * c;
    EXPECT_NEAR(sum, 1.0, 1e-10);
    expect_orthonormal(sd.left_basis, 1e-10);
    expect_orthonormal(sd.right_basis, 1e-10);
    EXPECT_GT(fidelity(psi, sd.reconstruct()), 1.0 - 1e-9);
  }
}

TEST(Schmidt, DimensionMismatchThrows) {
  EXPECT_THROW(schmidt(make_singlet(), {2, 3}), DimensionError);
  EXPECT_THROW(is_product(make_singlet(), {3, 3}), DimensionError);
}

TEST(Schmidt, RandomReconstructionAndOrdering) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const PureState psi = random_pure_state(rng, 9);
    const SchmidtDecomposition sd = schmidt(psi, {3, 3});
    EXPECT_TRUE(std::is_sorted(sd.coefficients.rbegin(), sd.coefficients.rend()));
    EXPECT_GT(fidelity(psi, sd.reconstruct()), 1.0 - 1e-9);
    expect_orthonormal(sd.left_basis, 1e-10);
    expect_orthonormal(sd.right_basis, 1e-10);
  }
}

TEST(Schmidt, RankTwoOfThreeCompletesRightBasis) {
  // (|00> + |11>)/sqrt2 in 3x3: one zero coefficient.
  ComplexVector v(9);
  v[0] = kR;
  v[4] = kR;
  const SchmidtDecomposition sd = schmidt(PureState(v), {3, 3});
  EXPECT_EQ(sd.rank(), 2u);
  EXPECT_NEAR(sd.coefficients[2], 0.0, 1e-12);
  expect_orthonormal(sd.right_basis, 1e-10);
}

TEST(IsProduct, BasisState) {
  const ProductCheck pc = is_product(PureState::basis(4, 0), {2, 2});
  ASSERT_TRUE(pc.is_product);
  EXPECT_NEAR(fidelity(pc.factors->first, PureState::basis(2, 0).amplitudes()), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(pc.factors->second, PureState::basis(2, 0).amplitudes()), 1.0, 1e-15);
}

TEST(IsProduct, SingletIsEntangled) {
  const ProductCheck pc = is_product(make_singlet(), {2, 2});
  EXPECT_FALSE(pc.is_product);
  EXPECT_EQ(pc.schmidt_rank, 2u);
  EXPECT_FALSE(pc.factors.has_value());
}

TEST(IsProduct, RandomProductRoundTrip) {
  Rng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const PureState a = random_pure_state(rng, 2 + trial % 2);
    const PureState b = random_pure_state(rng, 2 + trial % 3);
    const PureState ab = make_product(a, b);
    const ProductCheck pc = is_product(ab, {a.dim(), b.dim()});
    ASSERT_TRUE(pc.is_product);
    EXPECT_NEAR(fidelity(pc.factors->first, a.amplitudes()), 1.0, 1e-9);
    EXPECT_NEAR(fidelity(pc.factors->second, b.amplitudes()), 1.0, 1e-9);
    const ComplexVector rebuilt = tensor(pc.factors->first.amplitudes(), pc.factors->second.amplitudes());
    for (std::size_t k = 0; k < rebuilt.size(); ++k) EXPECT_LT(std::abs(rebuilt[k] - ab[k]), 1e-9);
  }
}

TEST(IsProduct, ProductPurityRankEquivalence) {
  Rng rng(23);
  std::bernoulli_distribution coin(0.5);
  int products = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const bool make_prod = coin(rng);
    const PureState psi = make_prod ? make_product(random_pure_state(rng, 2), random_pure_state(rng, 3))
                                    : random_pure_state(rng, 6);
    const ProductCheck pc = is_product(psi, {2, 3});
    const double purity =
        reduced_state(DensityOperator::from_pure(psi), {2, 3}, Subsystem::First).purity();
    const bool pure_marginal = std::abs(purity - 1.0) <= 1e-8;
    EXPECT_EQ(pc.is_product, pure_marginal) << "trial " << trial;
    EXPECT_EQ(pc.is_product, pc.schmidt_rank == 1);
    EXPECT_EQ(pc.is_product, make_prod);
    products += pc.is_product;
  }
  EXPECT_GT(products, 0);
}

TEST(ReducedState, SingletGivesHalfIdentity) {
  const DensityOperator w = DensityOperator::from_pure(make_singlet());
  for (Subsystem s : {Subsystem::First, Subsystem::Second}) {
    EXPECT_LT(max_abs_diff(reduced_state(w, {2, 2}, s).matrix(), 0.5 * pauli::i2()), 1e-15);
  }
}

TEST(ReducedState, ProductOfMixedStates) {
  Rng rng(24);
  const DensityOperator rho = random_density(rng, 2), sigma = random_density(rng, 3);
  const DensityOperator w(tensor(rho.matrix(), sigma.matrix()));
  EXPECT_LT(max_abs_diff(reduced_state(w, {2, 3}, Subsystem::First).matrix(), rho.matrix()), 1e-12);
  EXPECT_LT(max_abs_diff(reduced_state(w, {2, 3}, Subsystem::Second).matrix(), sigma.matrix()), 1e-12);
}

TEST(ReducedState, PurityBelowOneIffEntangled) {
  Rng rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const PureState psi = trial % 2 ? random_pure_state(rng, 4)
                                    : make_product(random_pure_state(rng, 2), random_pure_state(rng, 2));
    const DensityOperator red = reduced_state(DensityOperator::from_pure(psi), {2, 2}, Subsystem::Second);
    EXPECT_EQ(red.purity() < 1.0 - 1e-8, schmidt(psi, {2, 2}).rank() == 2) << "trial " << trial;
    EXPECT_GE(eigenvalues(red.matrix()).front(), -1e-9);
  }
}

TEST(ReducedState, DimensionMismatchThrows) {
  EXPECT_THROW(reduced_state(DensityOperator::maximally_mixed(4), {2, 3}, Subsystem::First), DimensionError);
}

TEST(Constructors, Singlet) {
  const PureState s = make_singlet();
  EXPECT_NEAR(norm(s.amplitudes()), 1.0, 1e-15);
  const ComplexVector swapped = swap_subsystems(s.amplitudes());
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(swapped[k], -s[k]);
}

TEST(Constructors, Ghz) {
  const PureState g = make_ghz();
  EXPECT_EQ(g.dim(), 8u);
  EXPECT_NEAR(norm(g.amplitudes()), 1.0, 1e-15);
  const DensityOperator w = DensityOperator::from_pure(g);
  const DensityOperator single = reduced_state(w, {2, 4}, Subsystem::First);
  EXPECT_LT(max_abs_diff(single.matrix(), 0.5 * pauli::i2()), 1e-15);
  const ComplexVector xxx = tensor(tensor(pauli::x(), pauli::x()), pauli::x()).apply(g.amplitudes());
  for (std::size_t k = 0; k < 8; ++k) EXPECT_LT(std::abs(xxx[k] - g[k]), 1e-15);
}

TEST(TotalSpin, OperatorMatchesHandMatrix) {
  const ComplexMatrix expected{{2, 0, 0, 0}, {0, 1, 1, 0}, {0, 1, 1, 0}, {0, 0, 0, 2}};
  EXPECT_LT(max_abs_diff(spin::total_squared(), expected), 1e-15);
}

TEST(TotalSpin, Examples) {
  EXPECT_NEAR(total_spin_squared(DensityOperator::from_pure(make_singlet())), 0.0, 1e-12);
  EXPECT_NEAR(total_spin_squared(DensityOperator::from_pure(PureState::basis(4, 0))), 2.0, 1e-12);
  const DensityOperator mix(0.5 * (PureState::basis(4, 1).projector() + PureState::basis(4, 2).projector()));
  EXPECT_NEAR(total_spin_squared(mix), 1.0, 1e-12);
  EXPECT_THROW(total_spin_squared(DensityOperator::maximally_mixed(2)), DimensionError);
}

TEST(TotalSpin, WholeDiffersFromParts) {
  const DensityOperator singlet = DensityOperator::from_pure(make_singlet());
  const DensityOperator mix(0.5 * (PureState::basis(4, 1).projector() + PureState::basis(4, 2).projector()));
  for (Subsystem s : {Subsystem::First, Subsystem::Second}) {
    EXPECT_LT(trace_distance(reduced_state(singlet, {2, 2}, s).matrix(), reduced_state(mix, {2, 2}, s).matrix()),
              1e-12);
  }
  EXPECT_GT(std::abs(total_spin_squared(singlet) - total_spin_squared(mix)), 0.5);
}

TEST(NonInteracting, DecomposedFormIsDetected) {
  const ComplexMatrix h = tensor(pauli::z(), pauli::i2()) + tensor(pauli::i2(), pauli::x());
  const NonInteractingCheck c = is_noninteracting(h, {2, 2});
  ASSERT_TRUE(c.noninteracting);
  EXPECT_LT(c.residual, 1e-15);
  const auto& [h1, h2] = *c.parts;
  EXPECT_LT(max_abs_diff(tensor(h1, pauli::i2()) + tensor(pauli::i2(), h2), h), 1e-15);
  EXPECT_NEAR(h2.trace().real(), 0.0, 1e-15);
}

TEST(NonInteracting, TraceSplitGoesToFirstPart) {
  const ComplexMatrix h = 3.0 * ComplexMatrix::identity(6);
  const NonInteractingCheck c = is_noninteracting(h, {2, 3});
  ASSERT_TRUE(c.noninteracting);
  EXPECT_LT(max_abs_diff(c.parts->first, 3.0 * ComplexMatrix::identity(2)), 1e-15);
  EXPECT_LT(c.parts->second.max_abs(), 1e-15);
}

TEST(NonInteracting, CouplingTermsAreDetected) {
  // sigma_z (x) sigma_z has zero partial traces, so the residual is the
  // whole matrix: max entry 1.
  const NonInteractingCheck zz = is_noninteracting(tensor(pauli::z(), pauli::z()), {2, 2});
  EXPECT_FALSE(zz.noninteracting);
  EXPECT_NEAR(zz.residual, 1.0, 1e-15);
  EXPECT_FALSE(zz.parts.has_value());

  const ComplexMatrix h = tensor(pauli::z(), pauli::i2()) + tensor(pauli::i2(), pauli::x()) +
                          0.3 * tensor(pauli::x(), pauli::x());
  const NonInteractingCheck c = is_noninteracting(h, {2, 2});
  EXPECT_FALSE(c.noninteracting);
  EXPECT_NEAR(c.residual, 0.3, 1e-15);
}

TEST(NonInteracting, RandomLocalHamiltonians) {
  Rng rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix h = tensor(random_hermitian(rng, 2), ComplexMatrix::identity(3)) +
                            tensor(ComplexMatrix::identity(2), random_hermitian(rng, 3));
    EXPECT_TRUE(is_noninteracting(h, {2, 3}).noninteracting);
  }
}

TEST(NonInteracting, NonHermitianThrows) {
  EXPECT_THROW(is_noninteracting(ComplexMatrix{{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}, {2, 2}),
               NotHermitianError);
}

TEST(Entangling, UncoupledStaysProduct) {
  const std::vector<double> times{0.0, 0.3, 1.0, 2.5, 7.0};
  for (const EvolutionSample& s : entangling_evolution(0.0, times)) EXPECT_EQ(s.rank, 1u) << s.time;
}

TEST(Entangling, CoupledInitialConditionIsProduct) {
  const std::vector<double> times{0.0};
  EXPECT_EQ(entangling_evolution(1.0, times).front().rank, 1u);
}

TEST(Entangling, CoupledBecomesEntangledAgainstIntegrator) {
  const std::vector<double> times{0.5};
  const EvolutionSample s = entangling_evolution(1.0, times).front();
  EXPECT_EQ(s.rank, 2u);
  EXPECT_GT(s.coefficients[1], 0.01);

  const ComplexVector psi = rk4(entangling_hamiltonian(1.0), ComplexVector{1.0, 0.0, 0.0, 0.0}, 0.5, 20000);
  // Two-qubit Schmidt coefficients from |det M| and the unit norm.
  const double det = std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
  const double small = std::sqrt((1.0 - std::sqrt(1.0 - 4.0 * det * det)) / 2.0);
  EXPECT_NEAR(s.coefficients[1], small, 1e-9);

  // Closed form in span{|00>, |11>}: |b(t)| = g sin(w t) / w, w = sqrt(4 + g^2).
  const double w = std::sqrt(5.0);
  EXPECT_NEAR(s.coefficients[1], std::sin(w * 0.5) / w, 1e-12);
}

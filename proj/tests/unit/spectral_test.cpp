#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "qcontext/errors.hpp"
#include "qcontext/random.hpp"
#include "qcontext/spectral.hpp"

using namespace qcontext;

namespace {

void expect_valid_decomposition(const ComplexMatrix& h, const SpectralDecomposition& s, double tol) {
  const std::size_t n = h.dim();
  ComplexMatrix sum(n);
  for (std::size_t i = 0; i < s.projectors.size(); ++i) {
    const ComplexMatrix& p = s.projectors[i];
    EXPECT_LT(p.hermiticity_defect(), tol);
    EXPECT_LT(max_abs_diff(p * p, p), tol);
    for (std::size_t j = i + 1; j < s.projectors.size(); ++j) {
      EXPECT_LT((p * s.projectors[j]).max_abs(), tol);
    }
    sum += p;
  }
  EXPECT_LT(max_abs_diff(sum, ComplexMatrix::identity(n)), tol);
  EXPECT_LT(max_abs_diff(s.reconstruct(), h), tol);
  EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
}

}  // namespace

TEST(Spectral, SigmaZ) {
  const SpectralDecomposition s = spectral_decompose(pauli::z());
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-15);
  EXPECT_LT(max_abs_diff(s.projectors[0], ComplexMatrix{{0, 0}, {0, 1}}), 1e-15);
  EXPECT_LT(max_abs_diff(s.projectors[1], ComplexMatrix{{1, 0}, {0, 0}}), 1e-15);
}

TEST(Spectral, IdentityIsOneDegenerateProjector) {
  const SpectralDecomposition s = spectral_decompose(pauli::i2());
  ASSERT_EQ(s.eigenvalues.size(), 1u);
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-15);
  EXPECT_LT(max_abs_diff(s.projectors[0], pauli::i2()), 1e-15);
  EXPECT_EQ(s.projector_rank(0), 2u);
}

TEST(Spectral, SigmaXHalfIdentityPlusMinus) {
  const SpectralDecomposition s = spectral_decompose(pauli::x());
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-12);
  EXPECT_LT(max_abs_diff(s.projectors[0], 0.5 * (pauli::i2() - pauli::x())), 1e-12);
  EXPECT_LT(max_abs_diff(s.projectors[1], 0.5 * (pauli::i2() + pauli::x())), 1e-12);
}

TEST(Spectral, MergesNearlyDegenerateEigenvalues) {
  const std::vector<double> d{1.0, 1.0 + 1e-10, 2.0};
  const SpectralDecomposition s = spectral_decompose(ComplexMatrix::diagonal(d));
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_EQ(s.projector_rank(0), 2u);
  EXPECT_EQ(s.projector_rank(1), 1u);
}

TEST(Spectral, NonHermitianReportsDefect) {
  const ComplexMatrix m{{0, 1}, {0, 0}};
  try {
    spectral_decompose(m);
    FAIL() << "expected NotHermitianError";
  } catch (const NotHermitianError& e) {
    EXPECT_NE(std::string(e.what()).find('1'), std::string::npos) << e.what();
  }
  EXPECT_THROW(eigh(m), NotHermitianError);
}

TEST(Spectral, RandomDecompositionsAreValid) {
  Rng rng(10);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 8);
    const ComplexMatrix h = random_hermitian(rng, n);
    expect_valid_decomposition(h, spectral_decompose(h), 1e-10);
  }
}

TEST(Spectral, DegenerateRandomSpectrum) {
  Rng rng(11);
  const PureState a = random_pure_state(rng, 4);
  const ComplexMatrix h = 3.0 * ComplexMatrix::identity(4) - 2.0 * a.projector();
  const SpectralDecomposition s = spectral_decompose(h);
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_EQ(s.projector_rank(0), 1u);
  EXPECT_EQ(s.projector_rank(1), 3u);
  expect_valid_decomposition(h, s, 1e-10);
}

TEST(Spectral, EigenvectorPhaseConvention) {
  Rng rng(12);
  const EigenSystem es = eigh(random_hermitian(rng, 5));
  for (const ComplexVector& v : es.vectors) {
    const auto largest = std::max_element(v.begin(), v.end(),
                                          [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
    EXPECT_GT(largest->real(), 0.0);
    EXPECT_EQ(largest->imag(), 0.0);
    EXPECT_NEAR(norm(v), 1.0, 1e-12);
  }
}

TEST(Spectral, LargestSupportedDimension) {
  Rng rng(13);
  const ComplexMatrix h = random_hermitian(rng, 16);
  expect_valid_decomposition(h, spectral_decompose(h), 1e-10);
}

TEST(Evolution, ZeroTimeIsIdentity) {
  Rng rng(14);
  const ComplexMatrix h = random_hermitian(rng, 3);
  const ComplexMatrix w = random_density(rng, 3).matrix();
  EXPECT_LT(max_abs_diff(evolve_unitary(h, 0.0, w), w), 1e-14);
}

TEST(Evolution, ZeroGeneratorIsIdentity) {
  Rng rng(15);
  const ComplexMatrix w = random_density(rng, 3).matrix();
  EXPECT_LT(max_abs_diff(evolve_unitary(ComplexMatrix(3), 2.7, w), w), 1e-14);
}

TEST(Evolution, UnitaryForRandomGenerators) {
  Rng rng(16);
  std::uniform_real_distribution<double> time(-5.0, 5.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
    const ComplexMatrix u = unitary_from_hamiltonian(random_hermitian(rng, n), time(rng));
    EXPECT_LT(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(n)), 1e-12);
  }
}

TEST(Evolution, MatchesClosedFormForPauli) {
  // exp(-i sigma_z t) = diag(e^{-it}, e^{it})
  const double t = 0.73;
  const ComplexMatrix u = unitary_from_hamiltonian(pauli::z(), t);
  EXPECT_LT(std::abs(u(0, 0) - std::polar(1.0, -t)), 1e-14);
  EXPECT_LT(std::abs(u(1, 1) - std::polar(1.0, t)), 1e-14);
  EXPECT_LT(std::abs(u(0, 1)), 1e-14);
}

TEST(Evolution, PreservesEigenvalueMultiset) {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
    const ComplexMatrix w = random_density(rng, n).matrix();
    const ComplexMatrix out = evolve_unitary(random_hermitian(rng, n), 1.3, w);
    const std::vector<double> before = eigenvalues(w), after = eigenvalues(out);
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(before[k], after[k], 1e-9);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
    EXPECT_LT(out.hermiticity_defect(), 1e-12);
  }
}

TEST(Evolution, VectorAndOperatorFormsAgree) {
  Rng rng(18);
  const ComplexMatrix h = random_hermitian(rng, 4);
  const PureState psi = random_pure_state(rng, 4);
  const ComplexVector out = evolve_unitary(h, 0.4, psi.amplitudes());
  EXPECT_LT(max_abs_diff(ComplexMatrix::outer(out), evolve_unitary(h, 0.4, psi.projector())), 1e-12);
}

TEST(Evolution, NonHermitianGeneratorThrows) {
  EXPECT_THROW(evolve_unitary(ComplexMatrix{{0, 1}, {0, 0}}, 1.0, pauli::i2()), NotHermitianError);
}

TEST(TraceDistance, OrthogonalPureStatesAreDistanceOne) {
  EXPECT_NEAR(trace_distance(PureState::basis(2, 0).projector(), PureState::basis(2, 1).projector()), 1.0, 1e-15);
  EXPECT_NEAR(trace_distance(pauli::i2(), pauli::i2()), 0.0, 1e-15);
}

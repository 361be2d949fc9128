#include <gtest/gtest.h>

#include "qcontext/errors.hpp"
#include "qcontext/matrix.hpp"
#include "qcontext/random.hpp"
#include "qcontext/states.hpp"

using namespace qcontext;

namespace {

const Complex kI(0.0, 1.0);

ComplexMatrix integer_matrix(std::size_t dim, int offset) {
  ComplexMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      m(r, c) = Complex(static_cast<double>((r * 3 + c * 5 + offset) % 7) - 3.0,
                        static_cast<double>((r + 2 * c + offset) % 5) - 2.0);
    }
  }
  return m;
}

}  // namespace

TEST(Matrix, RejectsBadDimensions) {
  EXPECT_THROW(ComplexMatrix(0), DimensionError);
  EXPECT_THROW(ComplexMatrix(65), DimensionError);
  EXPECT_THROW(ComplexMatrix(2, std::vector<Complex>(3)), DimensionError);
  EXPECT_THROW((ComplexMatrix{{1.0, 2.0}, {3.0}}), DimensionError);
}

TEST(Matrix, RejectsNonFiniteEntries) {
  EXPECT_THROW(ComplexMatrix(1, {Complex(std::nan(""), 0.0)}), InvalidValueError);
}

TEST(Matrix, IdentityTensorIdentity) {
  EXPECT_EQ(tensor(pauli::i2(), pauli::i2()), ComplexMatrix::identity(4));
}

TEST(Matrix, SigmaZTensorSigmaZ) {
  const std::vector<double> diag{1.0, -1.0, -1.0, 1.0};
  EXPECT_EQ(tensor(pauli::z(), pauli::z()), ComplexMatrix::diagonal(diag));
}

TEST(Matrix, TensorDimensionIsProduct) {
  Rng rng(1);
  EXPECT_EQ(tensor(random_matrix(rng, 2), random_matrix(rng, 3)).dim(), 6u);
}

TEST(Matrix, TensorMixedProduct) {
  Rng rng(2);
  const ComplexMatrix a = random_matrix(rng, 2), b = random_matrix(rng, 3);
  const ComplexMatrix c = random_matrix(rng, 2), d = random_matrix(rng, 3);
  EXPECT_LT(max_abs_diff(tensor(a, b) * tensor(c, d), tensor(a * c, b * d)), 1e-12);
}

TEST(Matrix, TensorIsAssociativeOnIntegerMatrices) {
  const ComplexMatrix a = integer_matrix(2, 0), b = integer_matrix(3, 1), c = integer_matrix(2, 4);
  EXPECT_EQ(tensor(tensor(a, b), c), tensor(a, tensor(b, c)));
}

TEST(Matrix, TensorRejectsOversizedResult) {
  EXPECT_THROW(tensor(ComplexMatrix::identity(9), ComplexMatrix::identity(8)), DimensionError);
}

TEST(Matrix, VectorTensorMatchesKronecker) {
  const ComplexVector u{1.0, 2.0}, v{3.0, kI};
  const ComplexVector expected{3.0, kI, 6.0, 2.0 * kI};
  EXPECT_EQ(tensor(u, v), expected);
}

TEST(PartialTrace, ProductOperatorFactorizes) {
  Rng rng(3);
  const ComplexMatrix a = random_matrix(rng, 2), b = random_matrix(rng, 3);
  const ComplexMatrix ab = tensor(a, b);
  EXPECT_LT(max_abs_diff(partial_trace(ab, {2, 3}, Subsystem::Second), b.trace() * a), 1e-12);
  EXPECT_LT(max_abs_diff(partial_trace(ab, {2, 3}, Subsystem::First), a.trace() * b), 1e-12);
}

TEST(PartialTrace, SingletGivesHalfIdentity) {
  // (|01> - |10>)/sqrt2 projector written out by hand.
  const ComplexMatrix p{{0, 0, 0, 0}, {0, 0.5, -0.5, 0}, {0, -0.5, 0.5, 0}, {0, 0, 0, 0}};
  const ComplexMatrix half = 0.5 * pauli::i2();
  EXPECT_LT(max_abs_diff(partial_trace(p, {2, 2}, Subsystem::Second), half), 1e-15);
  EXPECT_LT(max_abs_diff(partial_trace(p, {2, 2}, Subsystem::First), half), 1e-15);
  EXPECT_LT(max_abs_diff(p, make_singlet().projector()), 1e-15);
}

TEST(PartialTrace, PreservesTrace) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix m = random_matrix(rng, 6);
    EXPECT_LT(std::abs(partial_trace(m, {2, 3}, Subsystem::Second).trace() - m.trace()), 1e-12);
    EXPECT_LT(std::abs(partial_trace(m, {2, 3}, Subsystem::First).trace() - m.trace()), 1e-12);
  }
}

TEST(PartialTrace, TripartiteCompositionGivesFullTrace) {
  Rng rng(5);
  const ComplexMatrix a = random_matrix(rng, 2), b = random_matrix(rng, 2), c = random_matrix(rng, 2);
  const ComplexMatrix abc = tensor(tensor(a, b), c);
  const ComplexMatrix ab = partial_trace(abc, {4, 2}, Subsystem::Second);
  const ComplexMatrix only_a = partial_trace(ab, {2, 2}, Subsystem::Second);
  const ComplexMatrix scalar = partial_trace(only_a, {1, 2}, Subsystem::Second);
  EXPECT_LT(std::abs(scalar(0, 0) - abc.trace()), 1e-12);
}

TEST(PartialTrace, MismatchNamesExpectedDimension) {
  try {
    partial_trace(ComplexMatrix::identity(4), {2, 3}, Subsystem::Second);
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    EXPECT_NE(std::string(e.what()).find('6'), std::string::npos) << e.what();
  }
}

TEST(Commutator, SelfCommutes) {
  EXPECT_EQ(commutator(pauli::z(), pauli::z()), ComplexMatrix(2));
}

TEST(Commutator, PauliAlgebra) {
  EXPECT_LT(max_abs_diff(commutator(pauli::x(), pauli::y()), 2.0 * kI * pauli::z()), 1e-15);
}

TEST(Commutator, IdentityCommutesWithAnything) {
  Rng rng(6);
  const ComplexMatrix a = random_matrix(rng, 3);
  EXPECT_LT(commutator(a, ComplexMatrix::identity(3)).max_abs(), 1e-14);
}

TEST(Commutator, DimensionMismatchThrows) {
  EXPECT_THROW(commutator(pauli::x(), ComplexMatrix::identity(3)), DimensionError);
}

TEST(Matrix, AdjointAndHermiticity) {
  const ComplexMatrix m{{1.0, kI}, {2.0, 3.0}};
  EXPECT_EQ(m.adjoint(), (ComplexMatrix{{1.0, 2.0}, {-kI, 3.0}}));
  EXPECT_FALSE(m.is_hermitian(1e-9));
  EXPECT_TRUE(m.hermitian_part().is_hermitian(1e-15));
  EXPECT_TRUE(pauli::y().is_hermitian(0.0));
}

TEST(Matrix, InnerIsConjugateLinearInFirstArgument) {
  const ComplexVector u{kI, 0.0}, v{1.0, 0.0};
  EXPECT_EQ(inner(u, v), -kI);
  EXPECT_DOUBLE_EQ(norm(ComplexVector{3.0, 4.0 * kI}), 5.0);
}

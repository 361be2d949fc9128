#pragma once

#include <vector>

#include "qcontext/matrix.hpp"

namespace qcontext {

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending. vectors[k] is
/// the unit eigenvector for values[k]; its largest-magnitude component is
/// real and positive.
struct EigenSystem {
  std::vector<double> values;
  std::vector<ComplexVector> vectors;
};

/// Cyclic complex Jacobi diagonalization. Throws NotHermitianError when the
/// input deviates from hermiticity by more than tol::kHermitian.
EigenSystem eigh(const ComplexMatrix& h);

std::vector<double> eigenvalues(const ComplexMatrix& h);

/// A = sum_i a_i P_i over distinct eigenvalues a_i (ascending).
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<ComplexMatrix> projectors;

  std::size_t dim() const { return projectors.front().dim(); }
  ComplexMatrix reconstruct() const;
  std::size_t projector_rank(std::size_t i) const;
};

/// Groups eigenvalues closer than tol::kEigenvalueMerge into one degenerate
/// projector.
SpectralDecomposition spectral_decompose(const ComplexMatrix& h);

/// exp(-i h t), assembled from the eigenpairs of h.
ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double t);

/// U w U^dagger with U = exp(-i h t).
ComplexMatrix evolve_unitary(const ComplexMatrix& h, double t, const ComplexMatrix& w);
ComplexVector evolve_unitary(const ComplexMatrix& h, double t, std::span<const Complex> psi);

/// 1/2 Tr|a - b| for Hermitian a, b.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qcontext

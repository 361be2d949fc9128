#include "qcontext/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "qcontext/errors.hpp"
#include "qcontext/spectral.hpp"
#include "qcontext/tolerances.hpp"

namespace qcontext {

namespace {

void require_bipartite(std::size_t dim, BipartiteDims dims, const char* what) {
  if (dims.first == 0 || dims.second == 0 || dim != dims.total()) {
    throw DimensionError(std::string(what) + ": state dim " + std::to_string(dim) +
                         " does not match expected d1*d2 = " + std::to_string(dims.total()));
  }
}

// Leading component: first entry clearly above numerical noise.
Complex leading_phase(std::span<const Complex> v) {
  for (const Complex& z : v) {
    if (std::abs(z) > tol::kSchmidtRank) return z / std::abs(z);
  }
  return 1.0;
}

// Orthonormal completion: the first standard basis vector that survives
// Gram-Schmidt against `existing`.
ComplexVector complete_basis(const std::vector<ComplexVector>& existing, std::size_t dim) {
  for (std::size_t e = 0; e < dim; ++e) {
    ComplexVector v(dim);
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const ComplexVector& u : existing) {
        const Complex overlap = inner(u, v);
        for (std::size_t k = 0; k < dim; ++k) v[k] -= overlap * u[k];
      }
    }
    const double n = norm(v);
    if (n > 1e-6) {
      for (Complex& z : v) z /= n;
      return v;
    }
  }
  throw InvalidValueError("schmidt: could not complete orthonormal basis");
}

}  // namespace

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty() || amplitudes_.size() > kMaxDim) {
    throw DimensionError("pure state dim must be in [1, " + std::to_string(kMaxDim) + "]");
  }
  for (const Complex& z : amplitudes_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidValueError("pure state amplitudes must be finite");
    }
  }
  double sum = 0.0;
  for (const Complex& z : amplitudes_) sum += std::norm(z);
  if (std::abs(sum - 1.0) > tol::kNorm) {
    std::ostringstream msg;
    msg << "pure state is not normalized (sum |c_i|^2 = " << sum << ")";
    throw InvalidValueError(msg.str());
  }
}

PureState PureState::normalized(ComplexVector amplitudes) {
  const double n = norm(amplitudes);
  if (!(n > 0.0)) throw InvalidValueError("cannot normalize the zero vector");
  for (Complex& z : amplitudes) z /= n;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis index out of range");
  ComplexVector v(dim);
  v[index] = 1.0;
  return PureState(std::move(v));
}

DensityOperator::DensityOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  std::ostringstream msg;
  const double defect = matrix_.hermiticity_defect();
  if (defect > tol::kHermitian) {
    msg << "density operator is not Hermitian (max |w - w^dagger| entry = " << defect << ")";
    throw InvalidValueError(msg.str());
  }
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    msg << "density operator trace is " << tr << ", expected 1";
    throw InvalidValueError(msg.str());
  }
  const std::vector<double> ev = eigenvalues(matrix_);
  if (ev.front() < -tol::kPositivity) {
    msg << "density operator has negative eigenvalue " << ev.front();
    throw InvalidValueError(msg.str());
  }
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  return DensityOperator(psi.projector());
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  return DensityOperator(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

Complex DensityOperator::expectation(const ComplexMatrix& a) const { return (matrix_ * a).trace(); }

std::size_t SchmidtDecomposition::rank() const {
  return static_cast<std::size_t>(std::count_if(coefficients.begin(), coefficients.end(),
                                                [](double c) { return c > tol::kSchmidtRank; }));
}

ComplexVector SchmidtDecomposition::reconstruct() const {
  ComplexVector out(dims.total());
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const ComplexVector term = tensor(left_basis[k], right_basis[k]);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coefficients[k] * term[i];
  }
  return out;
}

SchmidtDecomposition schmidt(const PureState& psi, BipartiteDims dims) {
  require_bipartite(psi.dim(), dims, "schmidt");
  const std::size_t d1 = dims.first;
  const std::size_t d2 = dims.second;
  const auto amp = [&](std::size_t i, std::size_t j) { return psi[i * d2 + j]; };

  // Gram matrix M M^dagger of the d1 x d2 amplitude matrix.
  ComplexMatrix gram(d1);
  for (std::size_t i = 0; i < d1; ++i) {
    for (std::size_t j = 0; j < d1; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < d2; ++k) acc += amp(i, k) * std::conj(amp(j, k));
      gram(i, j) = acc;
    }
  }
  const EigenSystem es = eigh(gram);

  struct Term {
    double coefficient;
    ComplexVector left;
    ComplexVector right;  // unnormalized u^dagger M
  };
  std::vector<Term> terms;
  terms.reserve(d1);
  for (ComplexVector u : es.vectors) {
    const Complex phase = leading_phase(u);
    for (Complex& z : u) z *= std::conj(phase);
    ComplexVector r(d2);
    for (std::size_t j = 0; j < d2; ++j) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < d1; ++i) acc += std::conj(u[i]) * amp(i, j);
      r[j] = acc;
    }
    // Singular value from |u^dagger M| rather than sqrt(eigenvalue): exact to
    // rounding even for vanishing coefficients.
    const double s = norm(r);
    terms.push_back({s, std::move(u), std::move(r)});
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.coefficient > b.coefficient; });

  SchmidtDecomposition out;
  out.dims = dims;
  const std::size_t count = std::min(d1, d2);
  for (std::size_t k = 0; k < count; ++k) {
    Term& t = terms[k];
    out.coefficients.push_back(t.coefficient);
    out.left_basis.push_back(std::move(t.left));
    if (t.coefficient > tol::kSchmidtRank) {
      for (Complex& z : t.right) z /= t.coefficient;
      out.right_basis.push_back(std::move(t.right));
    } else {
      out.right_basis.push_back(complete_basis(out.right_basis, d2));
    }
  }
  return out;
}

double fidelity(const PureState& psi, std::span<const Complex> phi) {
  return std::norm(inner(psi.amplitudes(), phi));
}

ProductCheck is_product(const PureState& psi, BipartiteDims dims) {
  const SchmidtDecomposition sd = schmidt(psi, dims);
  const std::size_t rank = sd.rank();
  if (rank != 1) return {false, rank, std::nullopt};
  ComplexVector second = sd.right_basis[0];
  for (Complex& z : second) z *= sd.coefficients[0];
  return {true, rank,
          ProductFactors{PureState::normalized(sd.left_basis[0]), PureState::normalized(std::move(second))}};
}

DensityOperator reduced_state(const DensityOperator& w, BipartiteDims dims, Subsystem kept) {
  require_bipartite(w.dim(), dims, "reduced_state");
  const Subsystem traced = kept == Subsystem::First ? Subsystem::Second : Subsystem::First;
  return DensityOperator(partial_trace(w.matrix(), dims, traced).hermitian_part());
}

PureState make_singlet() {
  const double r = 1.0 / std::sqrt(2.0);
  return PureState({0.0, r, -r, 0.0});
}

PureState make_ghz() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector v(8);
  v[0] = r;
  v[7] = r;
  return PureState(std::move(v));
}

PureState make_product(const PureState& a, const PureState& b) {
  return PureState::normalized(tensor(a.amplitudes(), b.amplitudes()));
}

namespace spin {

ComplexMatrix sx() { return pauli::x() * Complex(0.5); }
ComplexMatrix sy() { return pauli::y() * Complex(0.5); }
ComplexMatrix sz() { return pauli::z() * Complex(0.5); }

ComplexMatrix total_squared() {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  ComplexMatrix total(4);
  for (const ComplexMatrix& s : {sx(), sy(), sz()}) {
    const ComplexMatrix component = tensor(s, id) + tensor(id, s);
    total += component * component;
  }
  return total;
}

}  // namespace spin

double total_spin_squared(const DensityOperator& w) {
  if (w.dim() != 4) {
    throw DimensionError("total_spin_squared: expected dim 4 (two spin-1/2 systems), got " +
                         std::to_string(w.dim()));
  }
  return w.expectation(spin::total_squared()).real();
}

NonInteractingCheck is_noninteracting(const ComplexMatrix& h, BipartiteDims dims) {
  require_bipartite(h.dim(), dims, "is_noninteracting");
  const double defect = h.hermiticity_defect();
  if (defect > tol::kHermitian) {
    std::ostringstream msg;
    msg << "is_noninteracting: Hamiltonian is not Hermitian (max |h - h^dagger| entry = " << defect << ")";
    throw NotHermitianError(msg.str());
  }
  const double d1 = static_cast<double>(dims.first);
  const double d2 = static_cast<double>(dims.second);
  const ComplexMatrix h1 = partial_trace(h, dims, Subsystem::Second) * Complex(1.0 / d2);
  const ComplexMatrix h2 = partial_trace(h, dims, Subsystem::First) * Complex(1.0 / d1) -
                           ComplexMatrix::identity(dims.second) * (h.trace() / (d1 * d2));
  const ComplexMatrix rebuilt = tensor(h1, ComplexMatrix::identity(dims.second)) +
                                tensor(ComplexMatrix::identity(dims.first), h2);
  const double residual = max_abs_diff(h, rebuilt);
  NonInteractingCheck out{residual <= tol::kNonInteracting, residual, std::nullopt};
  if (out.noninteracting) out.parts = std::make_pair(h1, h2);
  return out;
}

ComplexMatrix entangling_hamiltonian(double coupling) {
  const ComplexMatrix id = pauli::i2();
  return tensor(pauli::z(), id) + tensor(id, pauli::z()) +
         Complex(coupling) * tensor(pauli::x(), pauli::x());
}

std::vector<EvolutionSample> entangling_evolution(double coupling, std::span<const double> times) {
  const ComplexMatrix h = entangling_hamiltonian(coupling);
  const PureState initial = PureState::basis(4, 0);
  std::vector<EvolutionSample> out;
  out.reserve(times.size());
  for (double t : times) {
    const PureState psi = PureState::normalized(evolve_unitary(h, t, initial.amplitudes()));
    const SchmidtDecomposition sd = schmidt(psi, {2, 2});
    out.push_back({t, sd.coefficients, sd.rank()});
  }
  return out;
}

}  // namespace qcontext

#include "qcontext/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qcontext/errors.hpp"
#include "qcontext/tolerances.hpp"

namespace qcontext {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

void require_hermitian(const ComplexMatrix& h, const char* what) {
  const double defect = h.hermiticity_defect();
  if (defect > tol::kHermitian) {
    std::ostringstream msg;
    msg << what << ": matrix is not Hermitian (max |h - h^dagger| entry = " << defect << ")";
    throw NotHermitianError(msg.str());
  }
}

// Rotates v so its largest-magnitude component is real positive. The first
// index within 1e-12 of the maximum wins, which keeps ties deterministic.
void fix_phase(ComplexVector& v) {
  double best = 0.0;
  for (const Complex& z : v) best = std::max(best, std::abs(z));
  if (best == 0.0) return;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double magnitude = std::abs(v[k]);
    if (magnitude >= best - 1e-12) {
      const Complex phase = std::conj(v[k]) / magnitude;
      for (Complex& w : v) w *= phase;
      v[k] = magnitude;  // exactly real, not real up to rounding
      return;
    }
  }
}

}  // namespace

EigenSystem eigh(const ComplexMatrix& h) {
  require_hermitian(h, "eigh");
  const std::size_t n = h.dim();
  ComplexMatrix a = h.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double threshold = 1e-15 * std::max(1.0, a.frobenius_norm());
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Real symmetric Jacobi rotation on the phase-rotated 2x2 block.
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = diag(1, e^{-i phi}) * [[c, s], [-s, c]] in the (p, q) block.
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem result;
  result.values.reserve(n);
  result.vectors.reserve(n);
  for (std::size_t idx : order) {
    result.values.push_back(a(idx, idx).real());
    ComplexVector col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v(k, idx);
    fix_phase(col);
    result.vectors.push_back(std::move(col));
  }
  return result;
}

std::vector<double> eigenvalues(const ComplexMatrix& h) { return eigh(h).values; }

ComplexMatrix SpectralDecomposition::reconstruct() const {
  ComplexMatrix m(dim());
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) m += eigenvalues[i] * projectors[i];
  return m;
}

std::size_t SpectralDecomposition::projector_rank(std::size_t i) const {
  return static_cast<std::size_t>(std::lround(projectors.at(i).trace().real()));
}

SpectralDecomposition spectral_decompose(const ComplexMatrix& h) {
  require_hermitian(h, "spectral_decompose");
  const EigenSystem es = eigh(h);
  SpectralDecomposition sd;
  std::size_t start = 0;
  const std::size_t n = es.values.size();
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && es.values[end] - es.values[end - 1] < tol::kEigenvalueMerge) ++end;
    double mean = 0.0;
    ComplexMatrix proj(h.dim());
    for (std::size_t k = start; k < end; ++k) {
      mean += es.values[k];
      proj += ComplexMatrix::outer(es.vectors[k]);
    }
    sd.eigenvalues.push_back(mean / static_cast<double>(end - start));
    sd.projectors.push_back(std::move(proj));
    start = end;
  }
  return sd;
}

ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double t) {
  require_hermitian(h, "evolve_unitary");
  const EigenSystem es = eigh(h);
  ComplexMatrix u(h.dim());
  for (std::size_t k = 0; k < es.values.size(); ++k) {
    const Complex phase = std::exp(Complex(0.0, -es.values[k] * t));
    u += phase * ComplexMatrix::outer(es.vectors[k]);
  }
  return u;
}

ComplexMatrix evolve_unitary(const ComplexMatrix& h, double t, const ComplexMatrix& w) {
  if (h.dim() != w.dim()) throw DimensionError("evolve_unitary: generator and operator dims differ");
  const ComplexMatrix u = unitary_from_hamiltonian(h, t);
  return u * w * u.adjoint();
}

ComplexVector evolve_unitary(const ComplexMatrix& h, double t, std::span<const Complex> psi) {
  if (h.dim() != psi.size()) throw DimensionError("evolve_unitary: generator and state dims differ");
  return unitary_from_hamiltonian(h, t).apply(psi);
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const ComplexMatrix diff = (a - b).hermitian_part();
  double sum = 0.0;
  for (double ev : eigenvalues(diff)) sum += std::abs(ev);
  return 0.5 * sum;
}

}  // namespace qcontext

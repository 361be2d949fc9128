#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace qcontext {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr std::size_t kMaxDim = 64;

/// Dense square complex matrix, row-major. Entries are always finite and
/// 1 <= dim <= kMaxDim.
class ComplexMatrix {
 public:
  /// Zero matrix.
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  /// Row list; every row must have as many entries as there are rows.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |v><v|
  static ComplexMatrix outer(std::span<const Complex> v);
  /// |u><v|
  static ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);

  std::size_t dim() const { return dim_; }
  std::span<const Complex> entries() const { return entries_; }

  Complex operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  /// max_ij |m_ij|
  double max_abs() const;
  double frobenius_norm() const;
  /// max_ij |m - m^dagger|_ij
  double hermiticity_defect() const;
  bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }
  /// (m + m^dagger)/2
  ComplexMatrix hermitian_part() const;

  ComplexVector apply(std::span<const Complex> v) const;
  /// <u| m |v>
  Complex sandwich(std::span<const Complex> u, std::span<const Complex> v) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void validate() const;

  std::size_t dim_;
  std::vector<Complex> entries_;
};

/// Tensor factor dimensions (d1, d2) of a bipartite space.
struct BipartiteDims {
  std::size_t first;
  std::size_t second;

  std::size_t total() const { return first * second; }
};

enum class Subsystem { First, Second };

/// Max-entry distance.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product a (x) b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor(std::span<const Complex> a, std::span<const Complex> b);

/// Partial trace of m over the `traced_out` factor of `dims`; returns the
/// operator on the remaining factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem traced_out);

/// ab - ba
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

Complex inner(std::span<const Complex> u, std::span<const Complex> v);
double norm(std::span<const Complex> v);

namespace pauli {
ComplexMatrix i2();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace qcontext

#pragma once

// Complex-matrix substrate: Hermitian operators, density operators, POVMs,
// spectral decomposition and Hilbert-Schmidt traces.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "siccalc/errors.hpp"

namespace siccalc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace tol {
inline constexpr double herm = 1e-10;
inline constexpr double psd = 1e-9;
inline constexpr double trace = 1e-10;
inline constexpr double sum = 1e-9;
inline constexpr double eig = 1e-10;
}  // namespace tol

/// Largest absolute entry; the norm every tolerance in the library refers to.
double max_abs_entry(const ComplexMatrix& m);

/// A d x d complex matrix equal to its conjugate transpose within tol::herm.
class HermitianOperator {
 public:
  /// Throws NotHermitian if the matrix is not square or not Hermitian.
  explicit HermitianOperator(ComplexMatrix m);

  static HermitianOperator identity(int d);
  static HermitianOperator zero(int d);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  double trace() const;

  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator*(double s, const HermitianOperator& a);

 private:
  struct Unchecked {};
  HermitianOperator(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

/// Eigenvalues in descending order; column k of `vectors` belongs to values[k].
struct EigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Re tr(AB). Summed as sum_{jk} (Re A_jk Re B_jk + Im A_jk Im B_jk) in
/// row-major order, which equals tr(AB) for Hermitian B and makes
/// trace_product(a, b) == trace_product(b, a) bit for bit.
double trace_product(const HermitianOperator& a, const HermitianOperator& b);

EigenDecomposition eigen_decompose(const HermitianOperator& a);
double min_eigenvalue(const HermitianOperator& a);

/// vv^dagger / |v|^2. Throws InvalidArgument for a zero vector.
HermitianOperator projector_from_vector(const ComplexVector& v);

/// Positive semidefinite (smallest eigenvalue >= -tol::psd) with unit trace.
class DensityOperator {
 public:
  explicit DensityOperator(HermitianOperator op);

  static DensityOperator maximally_mixed(int d);
  static DensityOperator pure(const ComplexVector& v);

  int dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const ComplexMatrix& matrix() const { return op_.matrix(); }

  double purity() const { return trace_product(op_, op_); }

 private:
  HermitianOperator op_;
};

/// A list of positive semidefinite elements summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<HermitianOperator> elements);

  /// Rank-one projectors onto the columns of a unitary matrix.
  static Povm from_basis(const ComplexMatrix& basis_columns);
  /// The trivial one-outcome measurement {I}.
  static Povm trivial(int d);

  int dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<HermitianOperator>& elements() const { return elements_; }
  const HermitianOperator& operator[](std::size_t j) const { return elements_[j]; }

 private:
  int dim_;
  std::vector<HermitianOperator> elements_;
};

/// Max-entry deviation of m^dagger m from the identity.
double orthonormality_defect(const ComplexMatrix& m);

}  // namespace siccalc

#include "siccalc/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace siccalc {

double max_abs_entry(const ComplexMatrix& m) {
  double best = 0.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      best = std::max(best, std::abs(m(r, c)));
    }
  }
  return best;
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw NotHermitian("operator must be a non-empty square matrix, got " +
                       std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
  }
  const double defect = max_abs_entry(m_ - m_.adjoint());
  if (!(defect <= tol::herm)) {
    throw NotHermitian("matrix differs from its conjugate transpose by " + std::to_string(defect));
  }
}

HermitianOperator HermitianOperator::identity(int d) {
  return HermitianOperator(ComplexMatrix::Identity(d, d), Unchecked{});
}

HermitianOperator HermitianOperator::zero(int d) {
  return HermitianOperator(ComplexMatrix::Zero(d, d), Unchecked{});
}

double HermitianOperator::trace() const { return m_.trace().real(); }

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator sum: dimensions differ");
  return HermitianOperator(a.m_ + b.m_, HermitianOperator::Unchecked{});
}

HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator difference: dimensions differ");
  return HermitianOperator(a.m_ - b.m_, HermitianOperator::Unchecked{});
}

HermitianOperator operator*(double s, const HermitianOperator& a) {
  return HermitianOperator(s * a.m_, HermitianOperator::Unchecked{});
}

double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("trace_product: dimensions " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
  const ComplexMatrix& x = a.matrix();
  const ComplexMatrix& y = b.matrix();
  const int d = a.dim();
  double acc = 0.0;
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      // B_kj = conj(B_jk), so Re(A_jk B_kj) = Re A_jk Re B_jk + Im A_jk Im B_jk.
      acc += x(j, k).real() * y(j, k).real() + x(j, k).imag() * y(j, k).imag();
    }
  }
  return acc;
}

EigenDecomposition eigen_decompose(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error("eigen_decompose: eigensolver did not converge");
  }
  const int d = a.dim();
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  const auto& ev = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](int l, int r) { return ev(l) > ev(r); });

  EigenDecomposition out;
  out.values.reserve(d);
  out.vectors.resize(d, d);
  for (int k = 0; k < d; ++k) {
    out.values.push_back(ev(order[k]));
    out.vectors.col(k) = solver.eigenvectors().col(order[k]);
  }
  return out;
}

double min_eigenvalue(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

HermitianOperator projector_from_vector(const ComplexVector& v) {
  const double n2 = v.squaredNorm();
  if (v.size() == 0 || !(n2 > 0.0) || !std::isfinite(n2)) {
    throw InvalidArgument("projector_from_vector: vector must be nonzero and finite");
  }
  // (v v^dagger)_{jk} and _{kj} are exact conjugates in floating point.
  return HermitianOperator((v * v.adjoint()) / n2);
}

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) {
  const double tr = op_.trace();
  if (std::abs(tr - 1.0) > tol::trace) {
    throw InvalidArgument("density operator trace is " + std::to_string(tr) + ", expected 1");
  }
  const double lo = min_eigenvalue(op_);
  if (lo < -tol::psd) {
    throw InvalidArgument("density operator has negative eigenvalue " + std::to_string(lo));
  }
}

DensityOperator DensityOperator::maximally_mixed(int d) {
  return DensityOperator((1.0 / d) * HermitianOperator::identity(d));
}

DensityOperator DensityOperator::pure(const ComplexVector& v) {
  return DensityOperator(projector_from_vector(v));
}

Povm::Povm(std::vector<HermitianOperator> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidArgument("POVM needs at least one element");
  dim_ = elements_.front().dim();
  ComplexMatrix total = ComplexMatrix::Zero(dim_, dim_);
  for (std::size_t j = 0; j < elements_.size(); ++j) {
    if (elements_[j].dim() != dim_) {
      throw DimensionMismatch("POVM element " + std::to_string(j) + " has dimension " +
                              std::to_string(elements_[j].dim()));
    }
    const double lo = min_eigenvalue(elements_[j]);
    if (lo < -tol::psd) {
      throw InvalidArgument("POVM element " + std::to_string(j) + " has negative eigenvalue " +
                            std::to_string(lo));
    }
    total += elements_[j].matrix();
  }
  const double defect = max_abs_entry(total - ComplexMatrix::Identity(dim_, dim_));
  if (defect > tol::sum) {
    throw InvalidArgument("POVM elements sum to the identity only within " + std::to_string(defect));
  }
}

Povm Povm::from_basis(const ComplexMatrix& basis_columns) {
  if (basis_columns.rows() != basis_columns.cols()) {
    throw InvalidArgument("basis matrix must be square");
  }
  if (orthonormality_defect(basis_columns) > tol::eig) {
    throw InvalidArgument("basis columns are not orthonormal");
  }
  std::vector<HermitianOperator> elems;
  for (Eigen::Index k = 0; k < basis_columns.cols(); ++k) {
    elems.push_back(projector_from_vector(basis_columns.col(k)));
  }
  return Povm(std::move(elems));
}

Povm Povm::trivial(int d) { return Povm({HermitianOperator::identity(d)}); }

double orthonormality_defect(const ComplexMatrix& m) {
  return max_abs_entry(m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols()));
}

}  // namespace siccalc

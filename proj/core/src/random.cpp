#include "siccalc/random.hpp"

#include <cmath>
#include <string>

namespace siccalc {

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  // Fill column by column so the draw order is fixed independently of Eigen's storage.
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

ComplexVector random_unit_vector(int d, Rng& rng) {
  ComplexVector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

ComplexMatrix random_unitary(int d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(d, rng);
}

DensityOperator random_density(int d, int rank, Rng& rng) {
  if (d < 1 || rank < 1 || rank > d) {
    throw InvalidArgument("random_density: rank " + std::to_string(rank) +
                          " outside [1, " + std::to_string(d) + "]");
  }
  const ComplexMatrix g = ginibre(d, rank, rng);
  ComplexMatrix w = g * g.adjoint();
  w = 0.5 * (w + w.adjoint()).eval();
  w /= w.trace().real();
  return DensityOperator(HermitianOperator(std::move(w)));
}

DensityOperator random_density(int d, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(d, rank, rng);
}

Povm random_povm(int d, int outcomes, Rng& rng) {
  if (d < 1 || outcomes < 1) throw InvalidArgument("random_povm: need d >= 1 and outcomes >= 1");
  std::vector<ComplexMatrix> wishart;
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < outcomes; ++j) {
    const ComplexMatrix g = ginibre(d, d, rng);
    ComplexMatrix a = g * g.adjoint();
    a = 0.5 * (a + a.adjoint()).eval();
    total += a;
    wishart.push_back(std::move(a));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(total);
  const Eigen::VectorXd inv_sqrt = solver.eigenvalues().array().rsqrt();
  const ComplexMatrix s = solver.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() *
                          solver.eigenvectors().adjoint();
  std::vector<HermitianOperator> elems;
  elems.reserve(outcomes);
  for (const auto& a : wishart) {
    ComplexMatrix e = s * a * s;
    e = 0.5 * (e + e.adjoint()).eval();
    elems.emplace_back(std::move(e));
  }
  return Povm(std::move(elems));
}

Povm random_povm(int d, int outcomes, std::uint64_t seed) {
  Rng rng(seed);
  return random_povm(d, outcomes, rng);
}

HermitianOperator random_hermitian(int d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

}  // namespace siccalc

#include <gtest/gtest.h>

#include "siccalc/operator_core.hpp"
#include "siccalc/random.hpp"
#include "support.hpp"

namespace siccalc {
namespace {

TEST(HermitianOperator, RejectsNonHermitian) {
  ComplexMatrix m(2, 2);
  m << 1.0, 1.0, 0.0, 1.0;
  EXPECT_THROW(HermitianOperator{m}, NotHermitian);
  EXPECT_THROW(HermitianOperator{ComplexMatrix(2, 3)}, NotHermitian);
}

TEST(HermitianOperator, AcceptsSmallAsymmetry) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 1e-12;
  EXPECT_NO_THROW(HermitianOperator{m});
}

TEST(TraceProduct, IdentityInThree) {
  const auto id = HermitianOperator::identity(3);
  EXPECT_DOUBLE_EQ(trace_product(id, id), 3.0);
}

TEST(TraceProduct, ProjectorIsIdempotent) {
  Rng rng(7);
  for (int d = 2; d <= 6; ++d) {
    const auto p = projector_from_vector(random_unit_vector(d, rng));
    EXPECT_NEAR(trace_product(p, p), 1.0, 1e-14);
  }
}

TEST(TraceProduct, TetrahedronOverlapIsOneThird) {
  const SicFrame& f = testing::qubit_frame();
  EXPECT_NEAR(trace_product(f[0], f[1]), 1.0 / 3.0, 1e-15);
}

TEST(TraceProduct, SymmetricBitForBit) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_hermitian(4, rng);
    const auto b = random_hermitian(4, rng);
    EXPECT_EQ(trace_product(a, b), trace_product(b, a));
    EXPECT_NEAR(trace_product(a, b), (a.matrix() * b.matrix()).trace().real(), 1e-12);
  }
}

TEST(EigenDecompose, Identity) {
  const auto e = eigen_decompose(HermitianOperator::identity(2));
  ASSERT_EQ(e.values.size(), 2u);
  EXPECT_DOUBLE_EQ(e.values[0], 1.0);
  EXPECT_DOUBLE_EQ(e.values[1], 1.0);
}

TEST(EigenDecompose, DiagonalSignsDescending) {
  ComplexMatrix m(2, 2);
  m << -1.0, 0.0, 0.0, 1.0;
  const auto e = eigen_decompose(HermitianOperator(m));
  EXPECT_DOUBLE_EQ(e.values[0], 1.0);
  EXPECT_DOUBLE_EQ(e.values[1], -1.0);
  EXPECT_NEAR(std::abs(e.vectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.vectors(0, 1)), 1.0, 1e-15);
}

TEST(EigenDecompose, ReconstructsAndSumsToTrace) {
  Rng rng(3);
  for (int d = 2; d <= 8; ++d) {
    const auto a = random_hermitian(d, rng);
    const auto e = eigen_decompose(a);
    double sum = 0.0;
    ComplexMatrix back = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
      sum += e.values[k];
      back += e.values[k] * e.vectors.col(k) * e.vectors.col(k).adjoint();
      if (k > 0) EXPECT_GE(e.values[k - 1], e.values[k]);
    }
    EXPECT_NEAR(sum, a.trace(), tol::eig);
    EXPECT_LT(max_abs_entry(back - a.matrix()), 1e-12);
    EXPECT_LT(orthonormality_defect(e.vectors), 1e-12);
  }
}

TEST(ProjectorFromVector, BasisVector) {
  ComplexVector v(2);
  v << 1.0, 0.0;
  const auto p = projector_from_vector(v);
  EXPECT_EQ(p(0, 0), Complex(1.0));
  EXPECT_EQ(p(1, 1), Complex(0.0));
  EXPECT_EQ(p(0, 1), Complex(0.0));
}

TEST(ProjectorFromVector, PlusStateHasAllHalves) {
  ComplexVector v(2);
  v << 1.0, 1.0;
  const auto p = projector_from_vector(v / std::sqrt(2.0));
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) EXPECT_NEAR(std::abs(p(r, c) - 0.5), 0.0, 1e-15);
  }
}

TEST(ProjectorFromVector, IdempotentWithUnitTrace) {
  Rng rng(5);
  for (int d = 1; d <= 7; ++d) {
    const auto p = projector_from_vector(3.0 * random_unit_vector(d, rng));
    EXPECT_NEAR(p.trace(), 1.0, tol::trace);
    EXPECT_LT(max_abs_entry(p.matrix() * p.matrix() - p.matrix()), tol::eig);
  }
  EXPECT_THROW(projector_from_vector(ComplexVector::Zero(3)), InvalidArgument);
}

TEST(DensityOperator, RejectsBadTraceAndNegativity) {
  EXPECT_THROW(DensityOperator(HermitianOperator::identity(2)), InvalidArgument);
  ComplexMatrix m(2, 2);
  m << 1.5, 0.0, 0.0, -0.5;
  EXPECT_THROW(DensityOperator(HermitianOperator(m)), InvalidArgument);
}

TEST(RandomDensity, RankOneIsPure) {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const auto rho = random_density(2, 1, seed);
    EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
  }
}

TEST(RandomDensity, FullRankHasUnitTrace) {
  const auto rho = random_density(3, 3, 42);
  EXPECT_NEAR(rho.op().trace(), 1.0, 1e-12);
  EXPECT_GT(min_eigenvalue(rho.op()), 0.0);
}

TEST(RandomDensity, SameSeedSameBits) {
  const auto a = random_density(4, 2, 1234);
  const auto b = random_density(4, 2, 1234);
  EXPECT_TRUE((a.matrix().array() == b.matrix().array()).all());
  EXPECT_THROW(random_density(3, 0, 1), InvalidArgument);
  EXPECT_THROW(random_density(3, 4, 1), InvalidArgument);
}

TEST(Povm, CompletenessAndPositivity) {
  Rng rng(17);
  for (int d = 2; d <= 5; ++d) {
    const Povm p = random_povm(d, d + 2, rng);
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& e : p.elements()) {
      sum += e.matrix();
      EXPECT_GE(min_eigenvalue(e), -tol::psd);
    }
    EXPECT_LT(max_abs_entry(sum - ComplexMatrix::Identity(d, d)), 1e-12);
  }
  std::vector<HermitianOperator> bad{HermitianOperator::identity(2), HermitianOperator::identity(2)};
  EXPECT_THROW(Povm{bad}, InvalidArgument);
}

TEST(Povm, FromBasisNeedsOrthonormalColumns) {
  EXPECT_EQ(Povm::from_basis(random_unitary(3, 8)).size(), 3u);
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 0.5;
  EXPECT_THROW(Povm::from_basis(m), InvalidArgument);
}

TEST(RandomUnitary, IsUnitary) {
  for (int d = 1; d <= 9; ++d) EXPECT_LT(orthonormality_defect(random_unitary(d, 77)), 1e-13);
}

}  // namespace
}  // namespace siccalc

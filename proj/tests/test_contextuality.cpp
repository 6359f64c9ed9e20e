#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "siccalc/contextuality.hpp"
#include "siccalc/io.hpp"
#include "siccalc/random.hpp"

namespace siccalc {
namespace {

const RayBasisSet& peres() {
  static const RayBasisSet s = rayset_from_json(read_json_file(data_file("peres33.json")));
  return s;
}

ComplexVector ray(std::initializer_list<double> xs) {
  ComplexVector v(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v.normalized();
}

std::vector<std::pair<int, int>> brute_orthogonal_pairs(const RayBasisSet& s) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t a = 0; a < s.ray_count(); ++a) {
    for (std::size_t b = a + 1; b < s.ray_count(); ++b) {
      if (std::abs(s.rays()[a].dot(s.rays()[b])) < 1e-9) out.emplace_back(int(a), int(b));
    }
  }
  return out;
}

// Exactly one 1 per basis and no two orthogonal rays both 1, checked from scratch.
bool admissible(const RayBasisSet& s, const std::vector<int>& a) {
  for (const auto& b : s.bases()) {
    int ones = 0;
    for (int r : b) ones += a[r];
    if (ones != 1) return false;
  }
  for (auto [x, y] : brute_orthogonal_pairs(s)) {
    if (a[x] == 1 && a[y] == 1) return false;
  }
  return true;
}

// Plain depth-first search over "which ray of this basis is the 1", no propagation.
bool oracle_colorable(const RayBasisSet& s) {
  const auto orth = brute_orthogonal_pairs(s);
  std::vector<int> a(s.ray_count(), -1);
  std::function<bool(std::size_t)> go = [&](std::size_t bi) -> bool {
    if (bi == s.basis_count()) return true;
    const auto& b = s.bases()[bi];
    for (int pick : b) {
      if (a[pick] == 0) continue;
      std::vector<int> saved = a;
      bool ok = true;
      for (int r : b) {
        const int want = r == pick ? 1 : 0;
        if (a[r] != -1 && a[r] != want) ok = false;
        a[r] = want;
      }
      for (auto [x, y] : orth) {
        if (a[x] == 1 && a[y] == 1) ok = false;
      }
      if (ok && go(bi + 1)) return true;
      a = saved;
    }
    return false;
  };
  return go(0);
}

TEST(CanonicalRay, FixesPhase) {
  ComplexVector v(3);
  v << Complex(0.0, 0.0), Complex(0.0, -2.0), Complex(1.0, 0.0);
  const ComplexVector c = canonical_ray(v);
  EXPECT_NEAR(c.norm(), v.norm(), 1e-15);
  EXPECT_NEAR(c(1).imag(), 0.0, 1e-15);
  EXPECT_GT(c(1).real(), 0.0);
  EXPECT_NEAR(std::abs(c.normalized().dot(v.normalized())), 1.0, 1e-15);
  EXPECT_THROW(canonical_ray(ComplexVector::Zero(3)), InvalidArgument);
}

TEST(RayBasisSet, Validation) {
  const std::vector<ComplexVector> e{ray({1, 0, 0}), ray({0, 1, 0}), ray({0, 0, 1})};
  EXPECT_NO_THROW(RayBasisSet(3, e, {{0, 1, 2}}));
  EXPECT_THROW(RayBasisSet(3, e, {{0, 1}}), InvalidArgument);
  EXPECT_THROW(RayBasisSet(3, e, {{0, 1, 3}}), InvalidArgument);
  std::vector<ComplexVector> skew{ray({1, 0, 0}), ray({1, 1, 0}), ray({0, 0, 1})};
  EXPECT_THROW(RayBasisSet(3, skew, {{0, 1, 2}}), InvalidArgument);
  std::vector<ComplexVector> dup{ray({1, 0, 0}), -ray({1, 0, 0})};
  EXPECT_THROW(RayBasisSet(3, dup, {}), InvalidArgument);
  std::vector<ComplexVector> unnormed{ComplexVector::Ones(3)};
  EXPECT_THROW(RayBasisSet(3, unnormed, {}), InvalidArgument);
}

TEST(RayBasisSet, FromBasesSharesRays) {
  const auto s = RayBasisSet::from_bases(
      3, {{ray({1, 0, 0}), ray({0, 1, 0}), ray({0, 0, 1})},
          {ray({1, 0, 0}), ray({0, 1, 1}), ray({0, 1, -1})}});
  EXPECT_EQ(s.ray_count(), 5u);
  EXPECT_EQ(s.basis_count(), 2u);
  EXPECT_EQ(s.bases()[0][0], s.bases()[1][0]);
}

TEST(Coloring, SingleBasisHasThreeColorings) {
  const auto s = RayBasisSet::from_bases(3, {{ray({1, 0, 0}), ray({0, 1, 0}), ray({0, 0, 1})}});
  int count = 0;
  for (int m = 0; m < 8; ++m) {
    const std::vector<int> a{m & 1, (m >> 1) & 1, (m >> 2) & 1};
    EXPECT_EQ(verify_coloring(s, a), admissible(s, a)) << m;
    count += admissible(s, a);
  }
  EXPECT_EQ(count, 3);
  const ColoringResult r = find_coloring(s);
  ASSERT_TRUE(std::holds_alternative<Coloring>(r));
  EXPECT_TRUE(admissible(s, std::get<Coloring>(r).assignment));
}

TEST(Coloring, TwoBasesSharingARay) {
  const auto s = RayBasisSet::from_bases(
      3, {{ray({1, 0, 0}), ray({0, 1, 0}), ray({0, 0, 1})},
          {ray({1, 0, 0}), ray({0, 1, 1}), ray({0, 1, -1})}});
  const ColoringResult r = find_coloring(s);
  ASSERT_TRUE(std::holds_alternative<Coloring>(r));
  EXPECT_TRUE(admissible(s, std::get<Coloring>(r).assignment));
}

TEST(Peres, LoadsThirtyThreeRaysAndSixteenTriads) {
  const RayBasisSet& s = peres();
  EXPECT_EQ(s.dim(), 3);
  EXPECT_EQ(s.ray_count(), 33u);
  EXPECT_EQ(s.basis_count(), 16u);
  EXPECT_EQ(s.orthogonal_pairs(), brute_orthogonal_pairs(s));
  EXPECT_EQ(s.orthogonal_pairs().size(), 72u);
}

TEST(Peres, NoColoringExists) {
  const ColoringResult r = find_coloring(peres());
  ASSERT_TRUE(std::holds_alternative<Noncolorable>(r));
  EXPECT_GT(std::get<Noncolorable>(r).nodes, 0);
  EXPECT_FALSE(oracle_colorable(peres()));
}

TEST(Peres, RandomAssignmentsNeverWork) {
  const RayBasisSet& s = peres();
  const auto orth = brute_orthogonal_pairs(s);
  Rng rng(1);
  std::vector<int> a(s.ray_count());
  int found = 0;
  for (int t = 0; t < 1000000; ++t) {
    // One 1 per triad chosen at random, later triads overwriting earlier ones.
    std::fill(a.begin(), a.end(), 0);
    for (const auto& b : s.bases()) {
      a[b[std::uniform_int_distribution<int>(0, 2)(rng)]] = 1;
    }
    bool ok = true;
    for (const auto& b : s.bases()) ok = ok && a[b[0]] + a[b[1]] + a[b[2]] == 1;
    for (auto [x, y] : orth) ok = ok && !(a[x] == 1 && a[y] == 1);
    found += ok;
  }
  EXPECT_EQ(found, 0);
}

TEST(Peres, TriadsAloneAreColorable) {
  ColoringOptions loose;
  loose.exclude_orthogonal_pairs = false;
  const ColoringResult r = find_coloring(peres(), loose);
  ASSERT_TRUE(std::holds_alternative<Coloring>(r));
  const auto& a = std::get<Coloring>(r).assignment;
  EXPECT_TRUE(verify_coloring(peres(), a, loose));
  for (const auto& b : peres().bases()) EXPECT_EQ(a[b[0]] + a[b[1]] + a[b[2]], 1);
  EXPECT_FALSE(verify_coloring(peres(), a));
}

TEST(Peres, ProperPrefixesAreColorable) {
  const auto steps = ks_value_assignment_demo(peres(), basis_prefixes(16));
  ASSERT_EQ(steps.size(), 16u);
  for (std::size_t k = 0; k + 1 < steps.size(); ++k) {
    ASSERT_TRUE(std::holds_alternative<Coloring>(steps[k].result)) << k;
    EXPECT_TRUE(steps[k].verified);
    const RayBasisSet sub = peres().restrict_to_bases(steps[k].bases);
    EXPECT_TRUE(admissible(sub, std::get<Coloring>(steps[k].result).assignment));
    EXPECT_TRUE(oracle_colorable(sub));
  }
  EXPECT_TRUE(std::holds_alternative<Noncolorable>(steps.back().result));
  EXPECT_FALSE(steps.back().verified);
}

TEST(BasisPrefixes, Shape) {
  const auto p = basis_prefixes(3);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[0], std::vector<int>{0});
  EXPECT_EQ(p[2], (std::vector<int>{0, 1, 2}));
}

TEST(Epr, ComputationalBasisIsExactIdentity) {
  for (int d = 2; d <= 5; ++d) {
    const Eigen::MatrixXd p = epr_correlation(ComplexMatrix::Identity(d, d));
    EXPECT_EQ((p - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(off_diagonal_mass(p), 0.0);
  }
}

TEST(Epr, ConjugatedBasisGivesPerfectCorrelation) {
  for (int d = 2; d <= 5; ++d) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Eigen::MatrixXd p = epr_correlation(random_unitary(d, seed));
      EXPECT_LT((p - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Epr, UnconjugatedMatchesTransposeOverlap) {
  for (int d = 2; d <= 4; ++d) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const ComplexMatrix b = random_unitary(d, seed);
      const Eigen::MatrixXd p = epr_correlation(b, false);
      for (int i = 0; i < d; ++i) {
        EXPECT_NEAR(p.row(i).sum(), 1.0, 1e-12);
        for (int j = 0; j < d; ++j) {
          // <b_i (x) b_j | Phi> = conj(b_i^T b_j) / sqrt(d); rows carry weight 1/d.
          const double expect = std::norm((b.col(i).transpose() * b.col(j))(0, 0));
          EXPECT_NEAR(p(i, j), expect, 1e-12);
        }
      }
    }
  }
}

TEST(Epr, FourierBasisWithoutConjugationReflects) {
  // b_i^T b_j = delta(i + j = 0 mod 3) for the d = 3 Fourier basis, so outcome i pairs with -i.
  const int d = 3;
  ComplexMatrix f(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) f(r, c) = std::polar(1.0 / std::sqrt(3.0), 2.0 * std::acos(-1.0) * r * c / d);
  }
  const Eigen::MatrixXd p = epr_correlation(f, false);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) EXPECT_NEAR(p(i, j), (i + j) % d == 0 ? 1.0 : 0.0, 1e-15);
  }
  EXPECT_NEAR(off_diagonal_mass(p), 2.0 / 3.0, 1e-15);
}

TEST(Epr, RejectsNonUnitary) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 0.3;
  EXPECT_THROW(epr_correlation(m), InvalidArgument);
}

TEST(OffDiagonalMass, MeanOverRows) {
  Eigen::MatrixXd p(2, 2);
  p << 0.5, 0.5, 0.0, 1.0;
  EXPECT_DOUBLE_EQ(off_diagonal_mass(p), 0.25);
}

}  // namespace
}  // namespace siccalc

#include <gtest/gtest.h>

#include <cmath>

#include "siccalc/random.hpp"
#include "siccalc/urgleichung.hpp"
#include "support.hpp"

namespace siccalc {
namespace {

using testing::qubit_frame;
using testing::qutrit_frame;

const SicFrame& frame_for(int d) { return d == 2 ? qubit_frame() : qutrit_frame(); }

TEST(SkyProbabilities, StateAlignedWithFirstProjector) {
  for (int d : {2, 3}) {
    const SicFrame& f = frame_for(d);
    const CascadeExperiment exp(f, sky_as_povm(f), DensityOperator(f[0]));
    const ProbVector p = sky_probabilities(exp);
    EXPECT_NEAR(p[0], 1.0 / d, 1e-14);
    for (int i = 1; i < d * d; ++i) EXPECT_NEAR(p[i], 1.0 / (d * (d + 1.0)), 1e-14);
  }
  // d = 2: 1/2 and 1/6.
  const CascadeExperiment q(qubit_frame(), sky_as_povm(qubit_frame()), DensityOperator(qubit_frame()[0]));
  EXPECT_NEAR(sky_probabilities(q)[0], 0.5, 1e-15);
  EXPECT_NEAR(sky_probabilities(q)[3], 1.0 / 6.0, 1e-15);
}

TEST(CascadeExperiment, DimensionsMustAgree) {
  EXPECT_THROW(CascadeExperiment(qubit_frame(), Povm::trivial(3), DensityOperator::maximally_mixed(2)),
               DimensionMismatch);
  EXPECT_THROW(CascadeExperiment(qubit_frame(), Povm::trivial(2), DensityOperator::maximally_mixed(3)),
               DimensionMismatch);
}

TEST(ConditionalMatrix, SkyAsGroundIsShiftedKronecker) {
  for (int d : {2, 3}) {
    const SicFrame& f = frame_for(d);
    const ConditionalMatrix r = conditional_matrix(f, sky_as_povm(f));
    for (int j = 0; j < d * d; ++j) {
      for (int i = 0; i < d * d; ++i) {
        const double expect = ((i == j ? 1.0 : 0.0) + 1.0 / d) / (d + 1.0);
        EXPECT_NEAR(r(j, i), expect, 1e-14);
      }
    }
  }
}

TEST(ConditionalMatrix, ColumnsSumToOne) {
  Rng rng(1);
  for (int d : {2, 3}) {
    const ConditionalMatrix r = conditional_matrix(frame_for(d), random_povm(d, 5, rng));
    EXPECT_EQ(r.ground_outcomes(), 5);
    EXPECT_EQ(r.sky_outcomes(), d * d);
    for (int i = 0; i < d * d; ++i) EXPECT_NEAR(r.entries().col(i).sum(), 1.0, 1e-12);
  }
  const ConditionalMatrix trivial = conditional_matrix(qubit_frame(), Povm::trivial(2));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(trivial(0, i), 1.0, 1e-15);
}

TEST(ConditionalMatrix, RejectsBadColumns) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(2, 4, 0.5);
  EXPECT_NO_THROW(ConditionalMatrix(2, m));
  m(0, 1) = 0.6;
  EXPECT_THROW(ConditionalMatrix(2, m), InvalidArgument);
  m(0, 1) = -0.1;
  m(1, 1) = 1.1;
  EXPECT_THROW(ConditionalMatrix(2, m), InvalidArgument);
}

TEST(ClassicalTotal, SkyAsGroundFromFirstBasisDistribution) {
  // p = e_1, r(j|i) = (delta_ij + 1/2)/3: sum_i p(i) r(0|i) = (1/2)(1/2) + 3 (1/6)(1/6) = 1/3.
  const ConditionalMatrix r = conditional_matrix(qubit_frame(), sky_as_povm(qubit_frame()));
  const auto c = classical_total_probability(basis_distribution(2, 0), r);
  EXPECT_NEAR(c[0], 1.0 / 3.0, 1e-15);
  for (int j = 1; j < 4; ++j) EXPECT_NEAR(c[j], 2.0 / 9.0, 1e-15);
}

TEST(ClassicalTotal, ConstantRowsGiveThatConstant) {
  Eigen::MatrixXd m(3, 9);
  m.row(0).setConstant(0.2);
  m.row(1).setConstant(0.3);
  m.row(2).setConstant(0.5);
  const ConditionalMatrix r(3, m);
  Rng rng(2);
  const ProbVector p = state_to_prob(random_density(3, 2, rng), qutrit_frame());
  const auto c = classical_total_probability(p, r);
  EXPECT_NEAR(c[0], 0.2, 1e-15);
  EXPECT_NEAR(c[1], 0.3, 1e-15);
  EXPECT_NEAR(c[2], 0.5, 1e-15);
}

TEST(QuantumTotal, SkyAsGroundReturnsSkyProbabilities) {
  Rng rng(3);
  for (int d : {2, 3}) {
    const SicFrame& f = frame_for(d);
    const ConditionalMatrix r = conditional_matrix(f, sky_as_povm(f));
    for (int t = 0; t < 10; ++t) {
      const ProbVector p = state_to_prob(random_density(d, 1 + t % d, rng), f);
      const GroundDistribution q = quantum_total_probability(p, r, d);
      EXPECT_FALSE(q.not_a_probability);
      for (int j = 0; j < d * d; ++j) EXPECT_NEAR(q.values[j], p[j], 1e-14);
    }
  }
  const GroundDistribution q = quantum_total_probability(basis_distribution(2, 0), conditional_matrix(qubit_frame(), sky_as_povm(qubit_frame())), 2);
  EXPECT_NEAR(q.values[0], 0.5, 1e-15);
}

TEST(QuantumTotal, MatchesBornRuleForRandomMeasurements) {
  Rng rng(4);
  for (int d : {2, 3}) {
    const SicFrame& f = frame_for(d);
    for (int t = 0; t < 20; ++t) {
      const DensityOperator rho = random_density(d, 1 + t % d, rng);
      const Povm g = random_povm(d, 2 + t % 6, rng);
      const GroundDistribution q = quantum_total_probability(state_to_prob(rho, f), conditional_matrix(f, g), d);
      for (std::size_t j = 0; j < g.size(); ++j) {
        EXPECT_NEAR(q.values[j], (rho.matrix() * g[j].matrix()).trace().real(), 1e-12);
      }
    }
  }
}

TEST(QuantumTotal, VonNeumannGroundIsAffineInClassical) {
  Rng rng(5);
  for (int d : {2, 3}) {
    const SicFrame& f = frame_for(d);
    const Povm g = Povm::from_basis(random_unitary(d, rng));
    const ConditionalMatrix r = conditional_matrix(f, g);
    const ProbVector p = state_to_prob(random_density(d, d, rng), f);
    const auto c = classical_total_probability(p, r);
    const auto q = quantum_total_probability(p, r, d);
    for (int j = 0; j < d; ++j) EXPECT_NEAR(q.values[j], (d + 1.0) * c[j] - 1.0, 1e-13);
    // The uniform sky distribution goes to the uniform ground distribution.
    const auto u = quantum_total_probability(ProbVector::uniform(d), r, d);
    for (int j = 0; j < d; ++j) EXPECT_NEAR(u.values[j], 1.0 / d, 1e-14);
  }
}

TEST(QuantumTotal, FlagsOutOfRangeValues) {
  // p = (1, 0, 0, 0) reconstructs to 3 P_0 - I; measured in {P_0, I - P_0} it gives (2, -1).
  const SicFrame& f = qubit_frame();
  const Povm g({f[0], HermitianOperator::identity(2) - f[0]});
  const GroundDistribution q = quantum_total_probability(ProbVector(2, {1.0, 0.0, 0.0, 0.0}), conditional_matrix(f, g), 2);
  EXPECT_TRUE(q.not_a_probability);
  EXPECT_NEAR(q.values[0], 2.0, 1e-14);
  EXPECT_NEAR(q.values[1], -1.0, 1e-14);
}

TEST(BayesPosterior, SkyOutcomeGivesBasisDistribution) {
  for (int d : {2, 3}) {
    const SicFrame& f = frame_for(d);
    const ConditionalMatrix r = conditional_matrix(f, sky_as_povm(f));
    for (int k = 0; k < d * d; ++k) {
      const ProbVector post = bayes_posterior(r, k);
      const ProbVector e = basis_distribution(d, k);
      for (int i = 0; i < d * d; ++i) EXPECT_NEAR(post[i], e[i], 1e-14);
    }
  }
}

TEST(BayesPosterior, TrivialMeasurementLeavesUniform) {
  const ConditionalMatrix r = conditional_matrix(qutrit_frame(), Povm::trivial(3));
  const ProbVector post = bayes_posterior(r, 0);
  for (int i = 0; i < 9; ++i) EXPECT_NEAR(post[i], 1.0 / 9.0, 1e-15);
}

TEST(BayesPosterior, IsTheRepresentationOfTheNormalisedEffect) {
  Rng rng(6);
  for (int d : {2, 3}) {
    const SicFrame& f = frame_for(d);
    const Povm g = random_povm(d, 4, rng);
    const ConditionalMatrix r = conditional_matrix(f, g);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const DensityOperator post((1.0 / g[j].trace()) * g[j]);
      const ProbVector expect = state_to_prob(post, f);
      const ProbVector got = bayes_posterior(r, static_cast<int>(j));
      for (int i = 0; i < d * d; ++i) EXPECT_NEAR(got[i], expect[i], 1e-11);
    }
  }
}

TEST(BayesPosterior, ZeroRowIsDegenerate) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 4);
  m.row(0).setOnes();
  EXPECT_THROW(bayes_posterior(ConditionalMatrix(2, m), 1), DegenerateOutcome);
}

TEST(PreparingPovm, FirstOutcomeReproducesTheState) {
  Rng rng(7);
  for (int d : {2, 3}) {
    const SicFrame& f = frame_for(d);
    for (int t = 0; t < 5; ++t) {
      const DensityOperator rho = random_density(d, 1 + t % d, rng);
      const ConditionalMatrix r = conditional_matrix(f, preparing_povm(rho));
      const ProbVector post = bayes_posterior(r, 0);
      const ProbVector p = state_to_prob(rho, f);
      for (int i = 0; i < d * d; ++i) EXPECT_NEAR(post[i], p[i], 1e-11);
    }
  }
}

TEST(BornProbabilities, SumToOne) {
  Rng rng(8);
  const DensityOperator rho = random_density(3, 3, rng);
  const auto b = born_probabilities(rho, random_povm(3, 7, rng));
  double s = 0.0;
  for (double x : b) s += x;
  EXPECT_NEAR(s, 1.0, 1e-13);
}

double max_z(const std::vector<double>& freq, const std::vector<double>& expect, double n) {
  double z = 0.0;
  for (std::size_t j = 0; j < freq.size(); ++j) {
    const double sd = std::sqrt(std::max(expect[j] * (1.0 - expect[j]), 1e-300) / n);
    z = std::max(z, std::abs(freq[j] - expect[j]) / sd);
  }
  return z;
}

TEST(MonteCarlo, BothPathsMatchTheirPredictions) {
  Rng rng(9);
  const int d = 2;
  const SicFrame& f = qubit_frame();
  const DensityOperator rho = random_density(d, 1, rng);
  const Povm g = Povm::from_basis(random_unitary(d, rng));
  const CascadeExperiment exp(f, g, rho);
  const std::int64_t n = 200000;
  const ProbVector p = sky_probabilities(exp);
  const ConditionalMatrix r = conditional_matrix(exp);

  const auto direct = monte_carlo_cascade(exp, Context::GroundDirect, n, 11);
  EXPECT_LT(max_z(direct, born_probabilities(rho, g), n), 4.0);
  const auto sky = monte_carlo_cascade(exp, Context::ViaSky, n, 12);
  EXPECT_LT(max_z(sky, classical_total_probability(p, r), n), 4.0);
}

TEST(MonteCarlo, ThreadCountDoesNotChangeCounts) {
  const SicFrame& f = qutrit_frame();
  const CascadeExperiment exp(f, random_povm(3, 4, 3), random_density(3, 2, 4));
  const std::int64_t n = 3 * kMonteCarloBatch + 17;
  for (Context c : {Context::GroundDirect, Context::ViaSky}) {
    const auto one = monte_carlo_cascade(exp, c, n, 5, 1);
    const auto four = monte_carlo_cascade(exp, c, n, 5, 4);
    EXPECT_EQ(one, four);
  }
}

}  // namespace
}  // namespace siccalc

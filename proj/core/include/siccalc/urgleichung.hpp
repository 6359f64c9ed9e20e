#pragma once

// The ground/sky cascade. A system prepared in rho either goes straight to a
// ground measurement {G_j} (context GroundDirect) or first through the sky SIC
// measurement {P_i / d} and then to the ground (context ViaSky). The classical
// law of total probability describes the second path only; the quantum rule
//   q(j) = sum_i [(d+1) p(i) - 1/d] r(j|i)
// recovers the first from the same p(i) and r(j|i).

#include <cstdint>
#include <vector>

#include "siccalc/operator_core.hpp"
#include "siccalc/sic_engine.hpp"
#include "siccalc/sic_probability.hpp"

namespace siccalc {

enum class Context { GroundDirect, ViaSky };

class CascadeExperiment {
 public:
  /// Throws DimensionMismatch unless sky, ground and prior share d.
  CascadeExperiment(SicFrame sky, Povm ground, DensityOperator prior,
                    Context context = Context::GroundDirect);

  int dim() const { return sky_.dim(); }
  const SicFrame& sky() const { return sky_; }
  const Povm& ground() const { return ground_; }
  const DensityOperator& prior() const { return prior_; }
  Context context() const { return context_; }

 private:
  SicFrame sky_;
  Povm ground_;
  DensityOperator prior_;
  Context context_;
};

/// r(j|i): rows are ground outcomes j, columns sky outcomes i. Every column is a
/// probability distribution over j.
class ConditionalMatrix {
 public:
  /// Throws InvalidArgument if an entry leaves [0, 1] or a column sum leaves
  /// 1 +- tol::sum (by more than the respective tolerance).
  ConditionalMatrix(int dim, Eigen::MatrixXd entries);

  int dim() const { return dim_; }
  int ground_outcomes() const { return static_cast<int>(r_.rows()); }
  int sky_outcomes() const { return static_cast<int>(r_.cols()); }
  double operator()(int j, int i) const { return r_(j, i); }
  const Eigen::MatrixXd& entries() const { return r_; }

 private:
  int dim_;
  Eigen::MatrixXd r_;
};

/// The sky SIC as a ground measurement: G_j = P_j / d.
Povm sky_as_povm(const SicFrame& frame);

/// {c rho, I - c rho} with c = 1/lambda_max(rho): outcome 0 has posterior rho.
Povm preparing_povm(const DensityOperator& rho);

ProbVector sky_probabilities(const CascadeExperiment& exp);

/// r(j|i) = tr(P_i G_j), the system being left in P_i by the sky outcome i.
ConditionalMatrix conditional_matrix(const CascadeExperiment& exp);
ConditionalMatrix conditional_matrix(const SicFrame& sky, const Povm& ground);

/// tr(rho G_j) for every j.
std::vector<double> born_probabilities(const DensityOperator& rho, const Povm& ground);

/// sum_i p(i) r(j|i).
std::vector<double> classical_total_probability(const ProbVector& p, const ConditionalMatrix& r);

struct GroundDistribution {
  std::vector<double> values;
  /// Some entry lies outside [-tol, 1 + tol]; values are still reported.
  bool not_a_probability = false;
};

inline constexpr double kNotAProbabilityTol = 1e-10;

/// q(j) = sum_i [(d+1) p(i) - 1/d] r(j|i).
GroundDistribution quantum_total_probability(const ProbVector& p, const ConditionalMatrix& r,
                                             int d);

inline constexpr double kDegenerateOutcomeTol = 1e-12;

/// Prob(i|j) = r(j|i) / sum_k r(j|k): Bayes' rule from the uniform sky prior.
/// Throws DegenerateOutcome when sum_k r(j|k) <= kDegenerateOutcomeTol.
ProbVector bayes_posterior(const ConditionalMatrix& r, int j);

/// Sampled ground outcome frequencies along one path of the cascade. Samples are
/// drawn in fixed batches of kMonteCarloBatch, batch b seeded from (seed, b), so
/// the result is the same for every thread count.
inline constexpr std::int64_t kMonteCarloBatch = 1 << 16;

std::vector<double> monte_carlo_cascade(const CascadeExperiment& exp, Context path,
                                        std::int64_t samples, std::uint64_t seed,
                                        int threads = 1);

}  // namespace siccalc

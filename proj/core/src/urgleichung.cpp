#include "siccalc/urgleichung.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <thread>

namespace siccalc {

CascadeExperiment::CascadeExperiment(SicFrame sky, Povm ground, DensityOperator prior,
                                     Context context)
    : sky_(std::move(sky)), ground_(std::move(ground)), prior_(std::move(prior)),
      context_(context) {
  if (ground_.dim() != sky_.dim() || prior_.dim() != sky_.dim()) {
    throw DimensionMismatch("cascade: sky d = " + std::to_string(sky_.dim()) + ", ground d = " +
                            std::to_string(ground_.dim()) + ", prior d = " +
                            std::to_string(prior_.dim()));
  }
}

ConditionalMatrix::ConditionalMatrix(int dim, Eigen::MatrixXd entries)
    : dim_(dim), r_(std::move(entries)) {
  if (r_.cols() != static_cast<Eigen::Index>(dim_) * dim_ || r_.rows() < 1) {
    throw InvalidArgument("conditional matrix must have d^2 columns and at least one row");
  }
  for (Eigen::Index i = 0; i < r_.cols(); ++i) {
    for (Eigen::Index j = 0; j < r_.rows(); ++j) {
      const double v = r_(j, i);
      if (!(v >= -tol::sum && v <= 1.0 + tol::sum)) {
        throw InvalidArgument("r(" + std::to_string(j) + "|" + std::to_string(i) + ") = " +
                              std::to_string(v) + " is not a probability");
      }
    }
    const double col = r_.col(i).sum();
    if (std::abs(col - 1.0) > tol::sum) {
      throw InvalidArgument("r(.|" + std::to_string(i) + ") sums to " + std::to_string(col));
    }
  }
}

Povm sky_as_povm(const SicFrame& frame) {
  std::vector<HermitianOperator> elems;
  elems.reserve(frame.size());
  for (const auto& p : frame.projectors()) elems.push_back((1.0 / frame.dim()) * p);
  return Povm(std::move(elems));
}

Povm preparing_povm(const DensityOperator& rho) {
  const double top = eigen_decompose(rho.op()).values.front();
  const HermitianOperator scaled = (1.0 / top) * rho.op();
  return Povm({scaled, HermitianOperator::identity(rho.dim()) - scaled});
}

ProbVector sky_probabilities(const CascadeExperiment& exp) {
  return state_to_prob(exp.prior(), exp.sky());
}

ConditionalMatrix conditional_matrix(const SicFrame& sky, const Povm& ground) {
  if (sky.dim() != ground.dim()) throw DimensionMismatch("conditional_matrix: dimensions differ");
  Eigen::MatrixXd r(ground.size(), sky.size());
  for (std::size_t j = 0; j < ground.size(); ++j) {
    for (std::size_t i = 0; i < sky.size(); ++i) {
      r(j, i) = trace_product(sky[i], ground[j]);
    }
  }
  return ConditionalMatrix(sky.dim(), std::move(r));
}

ConditionalMatrix conditional_matrix(const CascadeExperiment& exp) {
  return conditional_matrix(exp.sky(), exp.ground());
}

std::vector<double> born_probabilities(const DensityOperator& rho, const Povm& ground) {
  if (rho.dim() != ground.dim()) throw DimensionMismatch("born_probabilities: dimensions differ");
  std::vector<double> out(ground.size());
  for (std::size_t j = 0; j < ground.size(); ++j) out[j] = trace_product(rho.op(), ground[j]);
  return out;
}

std::vector<double> classical_total_probability(const ProbVector& p, const ConditionalMatrix& r) {
  if (p.size() != static_cast<std::size_t>(r.sky_outcomes())) {
    throw DimensionMismatch("classical_total_probability: p has " + std::to_string(p.size()) +
                            " entries, r has " + std::to_string(r.sky_outcomes()) + " columns");
  }
  std::vector<double> out(r.ground_outcomes(), 0.0);
  for (int j = 0; j < r.ground_outcomes(); ++j) {
    for (int i = 0; i < r.sky_outcomes(); ++i) out[j] += p[i] * r(j, i);
  }
  return out;
}

GroundDistribution quantum_total_probability(const ProbVector& p, const ConditionalMatrix& r,
                                             int d) {
  if (p.dim() != d || r.sky_outcomes() != d * d) {
    throw DimensionMismatch("quantum_total_probability: p, r and d disagree");
  }
  GroundDistribution out;
  out.values.assign(r.ground_outcomes(), 0.0);
  for (int j = 0; j < r.ground_outcomes(); ++j) {
    for (int i = 0; i < r.sky_outcomes(); ++i) {
      out.values[j] += ((d + 1.0) * p[i] - 1.0 / d) * r(j, i);
    }
    const double q = out.values[j];
    if (q < -kNotAProbabilityTol || q > 1.0 + kNotAProbabilityTol) out.not_a_probability = true;
  }
  return out;
}

ProbVector bayes_posterior(const ConditionalMatrix& r, int j) {
  if (j < 0 || j >= r.ground_outcomes()) throw InvalidArgument("bayes_posterior: no such outcome");
  const Eigen::VectorXd row = r.entries().row(j).transpose();
  const double total = row.sum();
  if (!(total > kDegenerateOutcomeTol)) {
    throw DegenerateOutcome("ground outcome " + std::to_string(j) +
                            " has zero likelihood for every sky outcome");
  }
  std::vector<double> post(row.size());
  for (Eigen::Index i = 0; i < row.size(); ++i) post[i] = std::max(row(i), 0.0) / total;
  return ProbVector(r.dim(), std::move(post));
}

namespace {

std::vector<double> cumulative(std::span<const double> probs) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += std::max(probs[k], 0.0);
    cdf[k] = acc;
  }
  for (double& c : cdf) c /= acc;
  return cdf;
}

std::size_t draw(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

}  // namespace

std::vector<double> monte_carlo_cascade(const CascadeExperiment& exp, Context path,
                                        std::int64_t samples, std::uint64_t seed, int threads) {
  if (samples < 1) throw InvalidArgument("monte_carlo_cascade: need at least one sample");

  const std::size_t outcomes = exp.ground().size();
  std::vector<double> direct_cdf;
  std::vector<double> sky_cdf;
  std::vector<std::vector<double>> ground_given_sky;
  if (path == Context::GroundDirect) {
    direct_cdf = cumulative(born_probabilities(exp.prior(), exp.ground()));
  } else {
    const ProbVector p = sky_probabilities(exp);
    sky_cdf = cumulative(p.values());
    const ConditionalMatrix r = conditional_matrix(exp);
    for (int i = 0; i < r.sky_outcomes(); ++i) {
      const Eigen::VectorXd col = r.entries().col(i);
      ground_given_sky.push_back(cumulative(std::span<const double>(col.data(), col.size())));
    }
  }

  const std::int64_t batches = (samples + kMonteCarloBatch - 1) / kMonteCarloBatch;
  std::vector<std::vector<std::int64_t>> counts(batches, std::vector<std::int64_t>(outcomes, 0));

  auto run_batch = [&](std::int64_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const std::int64_t n = std::min(kMonteCarloBatch, samples - b * kMonteCarloBatch);
    auto& c = counts[b];
    for (std::int64_t s = 0; s < n; ++s) {
      if (path == Context::GroundDirect) {
        ++c[draw(direct_cdf, uniform(rng))];
      } else {
        const std::size_t i = draw(sky_cdf, uniform(rng));
        ++c[draw(ground_given_sky[i], uniform(rng))];
      }
    }
  };

  const int workers = static_cast<int>(std::clamp<std::int64_t>(threads, 1, batches));
  if (workers == 1) {
    for (std::int64_t b = 0; b < batches; ++b) run_batch(b);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::int64_t b = next++; b < batches; b = next++) run_batch(b);
      });
    }
  }

  std::vector<std::int64_t> total(outcomes, 0);
  for (const auto& c : counts) {
    for (std::size_t j = 0; j < outcomes; ++j) total[j] += c[j];
  }
  std::vector<double> freq(outcomes);
  for (std::size_t j = 0; j < outcomes; ++j) {
    freq[j] = static_cast<double>(total[j]) / static_cast<double>(samples);
  }
  return freq;
}

}  // namespace siccalc

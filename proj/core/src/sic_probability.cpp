#include "siccalc/sic_probability.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace siccalc {

namespace {

void require_same_dim(int a, int b, const char* where) {
  if (a != b) {
    throw DimensionMismatch(std::string(where) + ": dimensions " + std::to_string(a) + " and " +
                            std::to_string(b));
  }
}

double re_trace_triple(const ComplexMatrix& ab, const ComplexMatrix& c) {
  // Re tr(AB C) = Re sum_{xy} (AB)_xy C_yx
  double acc = 0.0;
  const Eigen::Index d = c.rows();
  for (Eigen::Index x = 0; x < d; ++x) {
    for (Eigen::Index y = 0; y < d; ++y) {
      acc += (ab(x, y) * c(y, x)).real();
    }
  }
  return acc;
}

}  // namespace

ProbVector::ProbVector(int dim, std::vector<double> values)
    : dim_(dim), values_(std::move(values)) {
  if (dim_ < 1) throw InvalidArgument("probability vector dimension must be positive");
  const std::size_t n = static_cast<std::size_t>(dim_) * dim_;
  if (values_.size() != n) {
    throw InvalidArgument("probability vector for d = " + std::to_string(dim_) + " needs " +
                          std::to_string(n) + " entries, got " + std::to_string(values_.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < -tol::prob) {
      throw InvalidArgument("probability entry " + std::to_string(i) + " is " +
                            std::to_string(values_[i]));
    }
    total += values_[i];
  }
  if (std::abs(total - 1.0) > tol::prob) {
    throw InvalidArgument("probabilities sum to " + std::to_string(total) + ", expected 1");
  }
}

ProbVector ProbVector::uniform(int d) {
  const std::size_t n = static_cast<std::size_t>(d) * d;
  return ProbVector(d, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double ProbVector::dot(const ProbVector& other) const {
  if (other.size() != size()) throw DimensionMismatch("dot: probability vectors differ in length");
  double acc = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) acc += values_[i] * other.values_[i];
  return acc;
}

ProbVector basis_distribution(int d, int k) {
  const int n = d * d;
  if (k < 0 || k >= n) throw InvalidArgument("basis_distribution: index out of range");
  std::vector<double> v(n, 1.0 / (d * (d + 1.0)));
  v[k] = 1.0 / d;
  return ProbVector(d, std::move(v));
}

ProbVector state_to_prob(const DensityOperator& rho, const SicFrame& frame) {
  require_same_dim(rho.dim(), frame.dim(), "state_to_prob");
  const int d = frame.dim();
  std::vector<double> p(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    p[i] = trace_product(rho.op(), frame[i]) / d;
  }
  return ProbVector(d, std::move(p));
}

HermitianOperator prob_to_operator(const ProbVector& p, const SicFrame& frame) {
  require_same_dim(p.dim(), frame.dim(), "prob_to_operator");
  const int d = frame.dim();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < frame.size(); ++i) {
    m += ((d + 1.0) * p[i] - 1.0 / d) * frame[i].matrix();
  }
  return HermitianOperator(std::move(m));
}

StateValidity is_valid_state(const ProbVector& p, const SicFrame& frame) {
  const double lo = min_eigenvalue(prob_to_operator(p, frame));
  return {lo >= -tol::psd, lo};
}

StructureTensor::StructureTensor(int dim, std::vector<double> coeffs)
    : dim_(dim), n_(static_cast<std::size_t>(dim) * dim), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != n_ * n_ * n_) {
    throw InvalidArgument("structure tensor needs (d^2)^3 coefficients");
  }
}

double StructureTensor::cubic_form(std::span<const double> p) const {
  if (p.size() != n_) throw DimensionMismatch("cubic_form: wrong vector length");
  double acc = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    double acc_j = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      const double* row = &coeffs_[(j * n_ + k) * n_];
      double acc_k = 0.0;
      for (std::size_t l = 0; l < n_; ++l) acc_k += row[l] * p[l];
      acc_j += acc_k * p[k];
    }
    acc += acc_j * p[j];
  }
  return acc;
}

StructureTensor structure_tensor(const SicFrame& frame, int max_dim) {
  const int d = frame.dim();
  if (d > max_dim) {
    throw UnsupportedDimension("structure_tensor: d = " + std::to_string(d) +
                               " exceeds the dense-storage cap " + std::to_string(max_dim));
  }
  const std::size_t n = frame.size();
  std::vector<ComplexMatrix> products(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      products[j * n + k] = frame[j].matrix() * frame[k].matrix();
    }
  }
  auto triple = [&](std::size_t a, std::size_t b, std::size_t c) {
    return re_trace_triple(products[a * n + b], frame[c].matrix());
  };
  auto at = [n](std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; };

  std::vector<double> coeffs(n * n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      for (std::size_t l = k; l < n; ++l) {
        const double avg = (triple(j, k, l) + triple(j, l, k) + triple(k, j, l) +
                            triple(k, l, j) + triple(l, j, k) + triple(l, k, j)) /
                           6.0;
        coeffs[at(j, k, l)] = avg;
        coeffs[at(j, l, k)] = avg;
        coeffs[at(k, j, l)] = avg;
        coeffs[at(k, l, j)] = avg;
        coeffs[at(l, j, k)] = avg;
        coeffs[at(l, k, j)] = avg;
      }
    }
  }
  return StructureTensor(d, std::move(coeffs));
}

bool PurityConditions::is_pure(int d, double tolerance) const {
  return std::abs(quadratic - quadratic_target(d)) <= tolerance &&
         std::abs(cubic - cubic_target(d)) <= tolerance;
}

PurityConditions purity_conditions(const ProbVector& p, const StructureTensor& tensor) {
  require_same_dim(p.dim(), tensor.dim(), "purity_conditions");
  return {p.norm_squared(), tensor.cubic_form(p.values())};
}

PurityConditions purity_conditions(const ProbVector& p, const SicFrame& frame) {
  return purity_conditions(p, structure_tensor(frame));
}

HsIdentity hs_inner_product_identity(const ProbVector& p, const ProbVector& q,
                                     const SicFrame& frame) {
  require_same_dim(p.dim(), q.dim(), "hs_inner_product_identity");
  const int d = frame.dim();
  const double lhs = trace_product(prob_to_operator(p, frame), prob_to_operator(q, frame));
  const double rhs = d * (d + 1.0) * p.dot(q) - 1.0;
  return {lhs, rhs};
}

}  // namespace siccalc

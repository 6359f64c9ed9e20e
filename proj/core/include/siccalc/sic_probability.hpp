#pragma once

// The SIC probability representation: p(i) = tr(rho P_i)/d, its inverse
// rho = sum_i [(d+1) p(i) - 1/d] P_i, the pure-state conditions on p, and
// the identity tr(rho sigma) = d(d+1) p.q - 1.

#include <span>
#include <vector>

#include "siccalc/operator_core.hpp"
#include "siccalc/sic_engine.hpp"

namespace siccalc {

namespace tol {
inline constexpr double prob = 1e-12;
inline constexpr double pure = 1e-9;
}  // namespace tol

/// A point of the d^2-outcome probability simplex.
class ProbVector {
 public:
  /// Throws InvalidArgument unless values has d^2 entries, each >= -tol::prob,
  /// summing to 1 within tol::prob.
  ProbVector(int dim, std::vector<double> values);

  static ProbVector uniform(int d);

  int dim() const { return dim_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double dot(const ProbVector& other) const;
  double norm_squared() const { return dot(*this); }

  friend bool operator==(const ProbVector&, const ProbVector&) = default;

 private:
  int dim_;
  std::vector<double> values_;
};

/// e_k: 1/d at slot k and 1/(d(d+1)) elsewhere.
ProbVector basis_distribution(int d, int k);

ProbVector state_to_prob(const DensityOperator& rho, const SicFrame& frame);

/// sum_i [(d+1) p(i) - 1/d] P_i. Hermitian with unit trace, but positive
/// semidefinite only when p represents a quantum state.
HermitianOperator prob_to_operator(const ProbVector& p, const SicFrame& frame);

struct StateValidity {
  bool valid;
  double min_eigenvalue;
};

StateValidity is_valid_state(const ProbVector& p, const SicFrame& frame);

/// c_jkl = Re tr(P_j P_k P_l), averaged over the six orderings of (j, k, l)
/// so the stored tensor is exactly symmetric.
class StructureTensor {
 public:
  StructureTensor(int dim, std::vector<double> coeffs);

  int dim() const { return dim_; }
  std::size_t outcomes() const { return n_; }
  double operator()(std::size_t j, std::size_t k, std::size_t l) const {
    return coeffs_[(j * n_ + k) * n_ + l];
  }
  std::span<const double> coeffs() const { return coeffs_; }

  /// sum_{jkl} c_jkl p(j) p(k) p(l)
  double cubic_form(std::span<const double> p) const;

 private:
  int dim_;
  std::size_t n_;
  std::vector<double> coeffs_;
};

inline constexpr int kStructureTensorMaxDim = 8;

/// Dense d^6 tensor; throws UnsupportedDimension above max_dim.
StructureTensor structure_tensor(const SicFrame& frame, int max_dim = kStructureTensorMaxDim);

struct PurityConditions {
  double quadratic;  ///< sum_i p(i)^2
  double cubic;      ///< sum_{jkl} c_jkl p(j) p(k) p(l)

  static double quadratic_target(int d) { return 2.0 / (d * (d + 1.0)); }
  static double cubic_target(int d) { return (d + 7.0) / ((d + 1.0) * (d + 1.0) * (d + 1.0)); }
  bool is_pure(int d, double tolerance = tol::pure) const;
};

PurityConditions purity_conditions(const ProbVector& p, const StructureTensor& tensor);
PurityConditions purity_conditions(const ProbVector& p, const SicFrame& frame);

struct HsIdentity {
  double lhs;  ///< tr(rho sigma) from the reconstructed operators
  double rhs;  ///< d(d+1) p.q - 1
};

HsIdentity hs_inner_product_identity(const ProbVector& p, const ProbVector& q,
                                     const SicFrame& frame);

}  // namespace siccalc

#pragma once

// Kochen-Specker value assignments over interlocking orthonormal bases, and the
// EPR perfect-correlation setup on a maximally entangled pair.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "siccalc/operator_core.hpp"

namespace siccalc {

namespace tol {
inline constexpr double ray = 1e-10;
}  // namespace tol

/// Unit rays in C^d, unique up to phase, together with d-tuples of ray indices
/// that form orthonormal bases.
class RayBasisSet {
 public:
  /// Rays are canonicalised (first nonzero component real positive). Throws
  /// InvalidArgument for a non-unit or duplicate ray, an out-of-range index, or a
  /// basis that is not orthonormal within tol::ray.
  RayBasisSet(int dim, std::vector<ComplexVector> rays, std::vector<std::vector<int>> bases);

  /// Builds the set from explicit bases, merging rays that agree up to phase.
  static RayBasisSet from_bases(int dim, const std::vector<std::vector<ComplexVector>>& bases);

  int dim() const { return dim_; }
  std::size_t ray_count() const { return rays_.size(); }
  std::size_t basis_count() const { return bases_.size(); }
  const std::vector<ComplexVector>& rays() const { return rays_; }
  const std::vector<std::vector<int>>& bases() const { return bases_; }

  /// Pairs (a, b), a < b, with |<a|b>| < tol::ray, computed from the vectors.
  const std::vector<std::pair<int, int>>& orthogonal_pairs() const { return orthogonal_; }

  /// Same rays, only the listed bases.
  RayBasisSet restrict_to_bases(const std::vector<int>& which) const;

 private:
  int dim_;
  std::vector<ComplexVector> rays_;
  std::vector<std::vector<int>> bases_;
  std::vector<std::pair<int, int>> orthogonal_;
};

/// Phase-canonical copy: the first component above tol::ray in modulus made real positive.
ComplexVector canonical_ray(const ComplexVector& v);

struct ColoringOptions {
  /// Also forbid two mutually orthogonal rays from both taking value 1, even when
  /// no listed basis contains both.
  bool exclude_orthogonal_pairs = true;
};

struct Coloring {
  std::vector<int> assignment;  ///< one entry per ray, 0 or 1
  std::int64_t nodes = 0;       ///< branch decisions made before it was found
};

struct Noncolorable {
  std::int64_t nodes = 0;  ///< size of the exhausted search tree
};

using ColoringResult = std::variant<Coloring, Noncolorable>;

/// Exhaustive backtracking with unit propagation, most-constrained ray first.
ColoringResult find_coloring(const RayBasisSet& set, const ColoringOptions& opts = {});

/// Exactly one 1 per basis, values in {0, 1}, and (if requested) no orthogonal pair
/// with two 1s. Rays outside every basis are unconstrained.
bool verify_coloring(const RayBasisSet& set, const std::vector<int>& assignment,
                     const ColoringOptions& opts = {});

struct KsDemoStep {
  std::vector<int> bases;
  ColoringResult result;
  bool verified = false;  ///< a returned coloring passed verify_coloring
};

/// {0}, {0,1}, ..., {0,...,n-1}.
std::vector<std::vector<int>> basis_prefixes(std::size_t n);

/// find_coloring on each subset of bases in turn.
std::vector<KsDemoStep> ks_value_assignment_demo(const RayBasisSet& set,
                                                 const std::vector<std::vector<int>>& subsets,
                                                 const ColoringOptions& opts = {});

/// P(j|i) for |Phi> = sum_k |k>|k> / sqrt(d): rows are left outcomes i (basis column
/// b_i), columns right outcomes j. The right side measures the conjugate basis b_j*
/// when conjugate_right is set, b_j otherwise. Throws InvalidArgument unless the
/// columns of `basis` are orthonormal within tol::ray.
Eigen::MatrixXd epr_correlation(const ComplexMatrix& basis, bool conjugate_right = true);

/// Mean over rows of sum_{j != i} P(j|i).
double off_diagonal_mass(const Eigen::MatrixXd& p);

}  // namespace siccalc

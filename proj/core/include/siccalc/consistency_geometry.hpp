#pragma once

// Geometry of consistent sets in the d^2-simplex: sets S in which every pair
// of points satisfies 1/(d(d+1)) <= p.q <= 2/(d(d+1)). Quantum state space in
// the SIC representation is one maximal such set; this module checks the
// bounds, builds the negative-eigenvalue witness that shows maximality, and
// probes the derived properties (convexity, re-centred bounds, zero counts,
// permutation asymmetry, and families saturating both bounds).

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "siccalc/sic_engine.hpp"
#include "siccalc/sic_probability.hpp"

namespace siccalc {

namespace tol {
inline constexpr double zero = 1e-10;
inline constexpr double saturation = 1e-9;
inline constexpr double consistency = 1e-12;
}  // namespace tol

inline double consistency_lower_bound(int d) { return 1.0 / (d * (d + 1.0)); }
inline double consistency_upper_bound(int d) { return 2.0 / (d * (d + 1.0)); }
inline double centered_lower_bound(int d) { return -1.0 / (d * d * (d + 1.0)); }
inline double centered_upper_bound(int d) { return (d - 1.0) / (d * d * (d + 1.0)); }

/// A probability vector together with its offset p' = p - c from the simplex centre.
class SimplexPoint {
 public:
  explicit SimplexPoint(ProbVector p);

  int dim() const { return p_.dim(); }
  std::size_t size() const { return p_.size(); }
  const ProbVector& prob() const { return p_; }
  std::span<const double> values() const { return p_.values(); }
  std::span<const double> centered() const { return centered_; }

  double dot(const SimplexPoint& o) const { return p_.dot(o.p_); }
  double centered_dot(const SimplexPoint& o) const;

 private:
  ProbVector p_;
  std::vector<double> centered_;
};

std::vector<SimplexPoint> to_points(const std::vector<ProbVector>& ps);

struct Violation {
  std::size_t first;
  std::size_t second;
  bool second_is_basis;  ///< `second` indexes e_k rather than a supplied point
  double value;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ConsistencyReport {
  int dim = 0;
  double pair_min = 0.0;
  double pair_max = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::vector<Violation> violations;  ///< sorted by (first, second_is_basis, second)

  bool consistent() const { return violations.empty(); }
};

/// Every pair of supplied points (self-pairs included) and every point against every
/// basis distribution e_k. Throws DimensionMismatch on a length mismatch.
ConsistencyReport check_consistent(const std::vector<SimplexPoint>& points, int d,
                                   double tolerance = tol::consistency);

struct InsideQuantum {};

struct MaximalityWitness {
  SimplexPoint witness;      ///< SIC representation of the negative-eigenvector projector
  double dot;                ///< p . witness, below 1/(d(d+1))
  double min_eigenvalue;     ///< lambda_min of the reconstruction of p
};

using MaximalityResult = std::variant<InsideQuantum, MaximalityWitness>;

/// InsideQuantum when the reconstruction of p is PSD within tol::psd; otherwise the
/// projector sigma onto the most negative eigenvector, with p . q = (lambda_min + 1)/(d(d+1)).
MaximalityResult maximality_witness(const SimplexPoint& p, const SicFrame& frame);

SimplexPoint convex_combination(const SimplexPoint& p, const SimplexPoint& q, double x);

struct ConvexityReport {
  int combinations = 0;
  int checks = 0;
  std::vector<Violation> violations;  ///< first = trial index, second = reference point index
  bool consistent() const { return violations.empty(); }
};

/// Random mixtures x p + (1-x) q of random pairs of points, each checked against every
/// supplied point.
ConvexityReport convexity_probe(const std::vector<SimplexPoint>& points, int trials,
                                std::uint64_t seed, double tolerance = tol::consistency);

struct RecenteredBounds {
  double value;  ///< p' . q'
  double lo;     ///< -1/(d^2(d+1))
  double hi;     ///< (d-1)/(d^2(d+1))
  bool within(double tolerance = tol::consistency) const {
    return value >= lo - tolerance && value <= hi + tolerance;
  }
};

RecenteredBounds recentered_bounds(const SimplexPoint& p, const SimplexPoint& q, int d);

/// A k-dimensional face of the d^2-simplex lies at squared distance 1/(k+1) - 1/d^2
/// from the centre. The consistency sphere of squared radius (d-1)/(d^2(d+1)) crosses
/// the face's affine hull whenever that distance is smaller.
struct FaceExcursion {
  int face_dim;
  double distance_sq;
  double radius_sq;
  bool sphere_exceeds;
};

std::vector<FaceExcursion> sphere_face_report(int d);

struct ZeroCount {
  int zeros;
  int bound;  ///< d(d-1)/2
  bool ok;
};

ZeroCount zero_count_bound(const SimplexPoint& p, int d, double zero_tolerance = tol::zero);

struct PermutationReport {
  bool consistent = true;
  double min_dot = 0.0;
  double max_dot = 0.0;
  std::vector<Violation> violations;  ///< first = 0 (the permuted point), second = reference index
};

/// Applies perm (slot i of the result is p[perm[i]]) and checks both bounds against the
/// reference set and the permuted point itself.
PermutationReport permutation_probe(const SimplexPoint& p, const std::vector<int>& perm,
                                    const std::vector<SimplexPoint>& reference,
                                    double tolerance = tol::consistency);

SimplexPoint permute(const SimplexPoint& p, const std::vector<int>& perm);

/// A valid state p and a permutation whose image violates a consistency bound against
/// another valid state.
struct PermutationAsymmetry {
  SimplexPoint state;
  std::vector<int> permutation;
  SimplexPoint reference;
  double dot;
  int trials_used;
};

/// Random search over pure states and permutations. Reference states are pure states
/// drawn from the same generator. Returns nullopt when nothing turns up in `trials`.
std::optional<PermutationAsymmetry> find_permutation_asymmetry(const SicFrame& frame,
                                                               int trials, std::uint64_t seed);

struct SaturatingFamily {
  int m;
  bool ok;                  ///< m <= d
  bool centroid_is_center;  ///< G.G = 0 within tol::saturation
  double g_dot_g;           ///< measured |sum_k p'_k|^2
  double predicted;         ///< m(d-m)/(d^2(d+1))
};

class PreconditionViolated : public Error {
 public:
  PreconditionViolated(const std::string& what, std::size_t first, std::size_t second)
      : Error(what), first_(first), second_(second) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

/// Throws PreconditionViolated naming the first pair (k, l) that does not saturate
/// p'_k.p'_k = (d-1)/(d^2(d+1)) (k == l) or p'_k.p'_l = -1/(d^2(d+1)) (k != l).
SaturatingFamily saturating_family_bound(const std::vector<SimplexPoint>& points, int d,
                                         double tolerance = tol::saturation);

}  // namespace siccalc

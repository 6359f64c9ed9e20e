#pragma once

// SIC frames: Weyl-Heisenberg orbits of fiducial vectors, the frame-potential
// search for fiducials, bundled exact fiducials for d = 2, 3, and verification
// of the equiangularity condition tr(P_i P_j) = 1/(d+1).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "siccalc/operator_core.hpp"

namespace siccalc {

namespace tol {
inline constexpr double sic_numeric = 1e-9;
inline constexpr double sic_exact = 1e-12;
}  // namespace tol

/// Unit vector in C^d whose Weyl-Heisenberg orbit is (ideally) a SIC.
class Fiducial {
 public:
  /// Throws InvalidArgument unless |v| = 1 within 1e-12.
  explicit Fiducial(ComplexVector v);
  /// Rescales v to unit norm first.
  static Fiducial normalized(const ComplexVector& v);

  int dim() const { return static_cast<int>(v_.size()); }
  const ComplexVector& vector() const { return v_; }

 private:
  ComplexVector v_;
};

/// X^p Z^q v with X|k> = |k+1 mod d> and Z = diag(w^k), w = exp(2 pi i / d).
ComplexVector displace(const ComplexVector& v, int p, int q);

/// <f| X^p Z^q |f> for all (p, q), indexed p*d + q.
std::vector<Complex> displacement_overlaps(const ComplexVector& f);

/// Projectors onto X^p Z^q |f>, ordered by i = p*d + q.
std::vector<HermitianOperator> weyl_heisenberg_orbit(const Fiducial& f);

/// sum over (p,q) != (0,0) of |<f|D_pq|f>|^4.
double frame_potential(const Fiducial& f);
double frame_potential(const ComplexVector& f);

/// Lower bound (d-1)/(d+1) of the frame potential over unit vectors, attained exactly by SICs.
double frame_potential_minimum(int d);

/// Euclidean gradient of the (unnormalized) frame potential at f, written as a complex
/// vector g with dF = Re <g, df> for a perturbation df of f.
ComplexVector frame_potential_gradient(const ComplexVector& f);

/// sum over (p,q) != (0,0) of (|<f|D_pq|f>|^2 - 1/(d+1))^2 for unit f. On the unit sphere
/// this equals frame_potential(f) - frame_potential_minimum(d), but it is evaluated
/// without cancellation so it stays accurate down to ~1e-30.
double frame_potential_excess(const ComplexVector& f);

struct SicVerification {
  double max_offdiagonal = 0.0;  ///< max_{i != j} |tr P_i P_j - 1/(d+1)|
  double max_diagonal = 0.0;     ///< max_i |tr P_i^2 - 1|
  double identity_defect = 0.0;  ///< |(1/d) sum_i P_i - I|_max
  bool independent = false;      ///< Gram matrix has full rank d^2
  int gram_rank = 0;

  double max_deviation() const;
  bool passes(double tolerance) const { return independent && max_deviation() <= tolerance; }
};

/// d^2 rank-one projectors of dimension d. Construction checks counts and
/// dimensions only; verify_sic reports how well the SIC conditions hold.
class SicFrame {
 public:
  SicFrame(int dim, std::vector<HermitianOperator> projectors);
  static SicFrame from_fiducial(const Fiducial& f);

  int dim() const { return dim_; }
  std::size_t size() const { return projectors_.size(); }
  const std::vector<HermitianOperator>& projectors() const { return projectors_; }
  const HermitianOperator& operator[](std::size_t i) const { return projectors_[i]; }

  /// max_deviation() of verify_sic on this frame, computed at construction.
  double quality() const { return quality_; }
  const std::optional<Fiducial>& fiducial() const { return fiducial_; }

 private:
  int dim_;
  std::vector<HermitianOperator> projectors_;
  double quality_ = 0.0;
  std::optional<Fiducial> fiducial_;
};

SicVerification verify_sic(const SicFrame& frame);
/// Throws InvalidArgument if the list does not hold exactly d^2 operators of dimension d.
SicVerification verify_sic(int d, std::span<const HermitianOperator> projectors);

/// Exact fiducials: d = 2 has Bloch vector (1,1,1)/sqrt(3); d = 3 is (0, 1, -1)/sqrt(2).
/// Throws UnsupportedDimension otherwise.
Fiducial bundled_fiducial(int d);

struct FiducialSearchOptions {
  double tolerance = tol::sic_numeric;
  int threads = 1;
  /// Descent stops once the tangent gradient norm drops below this value.
  double gradient_tolerance = 1e-15;
};

struct FiducialSearchResult {
  Fiducial fiducial;
  double quality;
  int restart;
  int iterations;
};

/// Thrown when no restart reaches the requested tolerance; carries the best candidate.
class NoSicFound : public Error {
 public:
  NoSicFound(const std::string& what, FiducialSearchResult best)
      : Error(what), best_(std::move(best)) {}
  const FiducialSearchResult& best() const { return best_; }

 private:
  FiducialSearchResult best_;
};

/// Result of one projected gradient descent run from a given starting vector.
struct DescentResult {
  ComplexVector fiducial;
  double excess;
  int iterations;
};

/// Projected gradient descent with backtracking line search on the unit sphere,
/// minimizing the frame potential (via frame_potential_excess).
DescentResult descend_frame_potential(ComplexVector start, int max_iters,
                                      double gradient_tolerance = 1e-15);

/// Gauss-Newton refinement of the overlap residuals |<f|D_k|f>|^2 - 1/(d+1) on the unit
/// sphere, using a truncated pseudo-inverse of the Jacobian. Converges linearly even where
/// the minimum is degenerate (the d = 3 SIC family) and gradient descent crawls. Steps that
/// do not lower the excess are rejected, so the result is never worse than the input.
DescentResult polish_fiducial(ComplexVector start, int max_iters = 100);

/// Multi-restart minimization of the frame potential. Restart k starts from a Haar-random
/// unit vector drawn with seed + k; each restart runs descend_frame_potential for up to
/// max_iters steps followed by polish_fiducial. All restarts run; the winner is the lowest
/// (quality, restart index), so the result does not depend on `threads`.
FiducialSearchResult find_fiducial(int d, std::uint64_t seed, int restarts, int max_iters,
                                   const FiducialSearchOptions& options = {});

}  // namespace siccalc

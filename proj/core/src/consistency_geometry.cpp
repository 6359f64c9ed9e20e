#include "siccalc/consistency_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <tuple>

#include "siccalc/random.hpp"

namespace siccalc {

SimplexPoint::SimplexPoint(ProbVector p) : p_(std::move(p)) {
  const double c = 1.0 / static_cast<double>(p_.size());
  centered_.reserve(p_.size());
  for (double v : p_.values()) centered_.push_back(v - c);
}

double SimplexPoint::centered_dot(const SimplexPoint& o) const {
  if (o.size() != size()) throw DimensionMismatch("centered_dot: lengths differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < centered_.size(); ++i) acc += centered_[i] * o.centered_[i];
  return acc;
}

std::vector<SimplexPoint> to_points(const std::vector<ProbVector>& ps) {
  std::vector<SimplexPoint> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.emplace_back(p);
  return out;
}

namespace {

bool outside(double v, double lo, double hi, double tolerance) {
  return v < lo - tolerance || v > hi + tolerance;
}

void sort_violations(std::vector<Violation>& v) {
  std::sort(v.begin(), v.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.first, a.second_is_basis, a.second) <
           std::tie(b.first, b.second_is_basis, b.second);
  });
}

}  // namespace

ConsistencyReport check_consistent(const std::vector<SimplexPoint>& points, int d,
                                   double tolerance) {
  const std::size_t n = static_cast<std::size_t>(d) * d;
  for (std::size_t a = 0; a < points.size(); ++a) {
    if (points[a].size() != n) {
      throw DimensionMismatch("check_consistent: point " + std::to_string(a) + " has " +
                              std::to_string(points[a].size()) + " entries, expected " +
                              std::to_string(n));
    }
  }

  ConsistencyReport rep;
  rep.dim = d;
  rep.lower_bound = consistency_lower_bound(d);
  rep.upper_bound = consistency_upper_bound(d);
  rep.pair_min = std::numeric_limits<double>::infinity();
  rep.pair_max = -std::numeric_limits<double>::infinity();

  auto record = [&](std::size_t a, std::size_t b, bool basis, double v) {
    rep.pair_min = std::min(rep.pair_min, v);
    rep.pair_max = std::max(rep.pair_max, v);
    if (outside(v, rep.lower_bound, rep.upper_bound, tolerance)) {
      rep.violations.push_back({a, b, basis, v});
    }
  };

  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a; b < points.size(); ++b) record(a, b, false, points[a].dot(points[b]));
  }
  // p . e_k = (p(k) (d+1) - p(k) + 1) / (d(d+1)) expanded as a plain dot product.
  const double flat = 1.0 / (d * (d + 1.0));
  const double peak = 1.0 / d;
  for (std::size_t a = 0; a < points.size(); ++a) {
    const auto v = points[a].values();
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      record(a, k, true, flat * (total - v[k]) + peak * v[k]);
    }
  }
  if (points.empty()) {
    rep.pair_min = rep.pair_max = std::numeric_limits<double>::quiet_NaN();
  }
  sort_violations(rep.violations);
  return rep;
}

MaximalityResult maximality_witness(const SimplexPoint& p, const SicFrame& frame) {
  const EigenDecomposition eig = eigen_decompose(prob_to_operator(p.prob(), frame));
  const double lowest = eig.values.back();
  if (lowest >= -tol::psd) return InsideQuantum{};
  const DensityOperator sigma = DensityOperator::pure(eig.vectors.col(eig.vectors.cols() - 1));
  SimplexPoint q(state_to_prob(sigma, frame));
  const double dot = p.dot(q);
  return MaximalityWitness{std::move(q), dot, lowest};
}

SimplexPoint convex_combination(const SimplexPoint& p, const SimplexPoint& q, double x) {
  if (p.size() != q.size()) throw DimensionMismatch("convex_combination: lengths differ");
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("convex_combination: weight outside [0, 1]");
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = x * p.values()[i] + (1.0 - x) * q.values()[i];
  }
  return SimplexPoint(ProbVector(p.dim(), std::move(out)));
}

ConvexityReport convexity_probe(const std::vector<SimplexPoint>& points, int trials,
                                std::uint64_t seed, double tolerance) {
  ConvexityReport rep;
  if (points.empty() || trials <= 0) return rep;
  const int d = points.front().dim();
  const double lo = consistency_lower_bound(d);
  const double hi = consistency_upper_bound(d);
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    const std::size_t a = pick(rng);
    const std::size_t b = pick(rng);
    const double x = weight(rng);
    const SimplexPoint mix = convex_combination(points[a], points[b], x);
    ++rep.combinations;
    for (std::size_t r = 0; r < points.size(); ++r) {
      const double v = mix.dot(points[r]);
      ++rep.checks;
      if (outside(v, lo, hi, tolerance)) {
        rep.violations.push_back({static_cast<std::size_t>(t), r, false, v});
      }
    }
  }
  return rep;
}

RecenteredBounds recentered_bounds(const SimplexPoint& p, const SimplexPoint& q, int d) {
  const std::size_t n = static_cast<std::size_t>(d) * d;
  if (p.size() != n || q.size() != n) throw DimensionMismatch("recentered_bounds: wrong length");
  return {p.centered_dot(q), centered_lower_bound(d), centered_upper_bound(d)};
}

std::vector<FaceExcursion> sphere_face_report(int d) {
  const int n = d * d;
  const double radius_sq = centered_upper_bound(d);
  std::vector<FaceExcursion> out;
  for (int k = 0; k <= n - 2; ++k) {
    const double dist = 1.0 / (k + 1.0) - 1.0 / n;
    out.push_back({k, dist, radius_sq, radius_sq > dist});
  }
  return out;
}

ZeroCount zero_count_bound(const SimplexPoint& p, int d, double zero_tolerance) {
  const auto v = p.values();
  const int zeros = static_cast<int>(
      std::count_if(v.begin(), v.end(), [&](double x) { return x <= zero_tolerance; }));
  const int bound = d * (d - 1) / 2;
  return {zeros, bound, zeros <= bound};
}

SimplexPoint permute(const SimplexPoint& p, const std::vector<int>& perm) {
  if (perm.size() != p.size()) throw DimensionMismatch("permute: permutation has wrong length");
  std::vector<char> seen(perm.size(), 0);
  std::vector<double> out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const int src = perm[i];
    if (src < 0 || static_cast<std::size_t>(src) >= perm.size() || seen[src]) {
      throw InvalidArgument("permute: not a permutation");
    }
    seen[src] = 1;
    out[i] = p.values()[src];
  }
  return SimplexPoint(ProbVector(p.dim(), std::move(out)));
}

PermutationReport permutation_probe(const SimplexPoint& p, const std::vector<int>& perm,
                                    const std::vector<SimplexPoint>& reference,
                                    double tolerance) {
  const int d = p.dim();
  const double lo = consistency_lower_bound(d);
  const double hi = consistency_upper_bound(d);
  const SimplexPoint moved = permute(p, perm);

  PermutationReport rep;
  rep.min_dot = rep.max_dot = moved.dot(moved);
  if (outside(rep.min_dot, lo, hi, tolerance)) rep.violations.push_back({0, 0, false, rep.min_dot});
  for (std::size_t r = 0; r < reference.size(); ++r) {
    const double v = moved.dot(reference[r]);
    rep.min_dot = std::min(rep.min_dot, v);
    rep.max_dot = std::max(rep.max_dot, v);
    if (outside(v, lo, hi, tolerance)) rep.violations.push_back({0, r + 1, false, v});
  }
  rep.consistent = rep.violations.empty();
  return rep;
}

std::optional<PermutationAsymmetry> find_permutation_asymmetry(const SicFrame& frame,
                                                               int trials, std::uint64_t seed) {
  const int d = frame.dim();
  const std::size_t n = frame.size();
  constexpr int kPool = 8;
  Rng rng(seed);
  std::vector<SimplexPoint> pool;
  for (int k = 0; k < kPool; ++k) {
    pool.emplace_back(state_to_prob(DensityOperator::pure(random_unit_vector(d, rng)), frame));
  }
  const double lo = consistency_lower_bound(d);
  std::vector<int> perm(n);
  std::uniform_int_distribution<int> pick(0, kPool - 1);
  for (int t = 0; t < trials; ++t) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const SimplexPoint& p = pool[pick(rng)];
    const SimplexPoint moved = permute(p, perm);
    for (const auto& ref : pool) {
      const double v = moved.dot(ref);
      if (v < lo - tol::consistency) {
        return PermutationAsymmetry{p, perm, ref, v, t + 1};
      }
    }
  }
  return std::nullopt;
}

SaturatingFamily saturating_family_bound(const std::vector<SimplexPoint>& points, int d,
                                         double tolerance) {
  const std::size_t n = static_cast<std::size_t>(d) * d;
  const double self_target = centered_upper_bound(d);
  const double pair_target = centered_lower_bound(d);
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].size() != n) throw DimensionMismatch("saturating_family_bound: wrong length");
    for (std::size_t l = k; l < points.size(); ++l) {
      const double v = points[k].centered_dot(points[l]);
      const double target = k == l ? self_target : pair_target;
      if (std::abs(v - target) > tolerance) {
        throw PreconditionViolated("saturating_family_bound: pair (" + std::to_string(k) + ", " +
                                       std::to_string(l) + ") has p'.p' = " + std::to_string(v) +
                                       ", expected " + std::to_string(target),
                                   k, l);
      }
    }
  }
  std::vector<double> g(n, 0.0);
  for (const auto& p : points) {
    const auto c = p.centered();
    for (std::size_t i = 0; i < n; ++i) g[i] += c[i];
  }
  double gg = 0.0;
  for (double x : g) gg += x * x;
  const int m = static_cast<int>(points.size());
  const double predicted = m * (d - m) / (d * d * (d + 1.0));
  return {m, m <= d, std::abs(gg) <= tolerance, gg, predicted};
}

}  // namespace siccalc

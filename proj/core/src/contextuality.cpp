#include "siccalc/contextuality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace siccalc {

ComplexVector canonical_ray(const ComplexVector& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double mag = std::abs(v(k));
    if (mag > tol::ray) return v * (std::conj(v(k)) / mag);
  }
  throw InvalidArgument("canonical_ray: zero vector");
}

namespace {

bool same_ray(const ComplexVector& a, const ComplexVector& b) {
  return (a - b).cwiseAbs().maxCoeff() <= tol::ray;
}

}  // namespace

RayBasisSet::RayBasisSet(int dim, std::vector<ComplexVector> rays,
                         std::vector<std::vector<int>> bases)
    : dim_(dim), rays_(std::move(rays)), bases_(std::move(bases)) {
  if (dim_ < 2) throw InvalidArgument("ray set dimension must be at least 2");
  for (std::size_t r = 0; r < rays_.size(); ++r) {
    if (rays_[r].size() != dim_) {
      throw InvalidArgument("ray " + std::to_string(r) + " has " +
                            std::to_string(rays_[r].size()) + " components, expected " +
                            std::to_string(dim_));
    }
    if (std::abs(rays_[r].norm() - 1.0) > tol::ray) {
      throw InvalidArgument("ray " + std::to_string(r) + " is not a unit vector");
    }
    rays_[r] = canonical_ray(rays_[r]);
    for (std::size_t s = 0; s < r; ++s) {
      if (same_ray(rays_[r], rays_[s])) {
        throw InvalidArgument("rays " + std::to_string(s) + " and " + std::to_string(r) +
                              " coincide up to phase");
      }
    }
  }
  for (std::size_t b = 0; b < bases_.size(); ++b) {
    const auto& basis = bases_[b];
    if (basis.size() != static_cast<std::size_t>(dim_)) {
      throw InvalidArgument("basis " + std::to_string(b) + " has " +
                            std::to_string(basis.size()) + " rays, expected " +
                            std::to_string(dim_));
    }
    ComplexMatrix m(dim_, dim_);
    for (int k = 0; k < dim_; ++k) {
      const int r = basis[k];
      if (r < 0 || static_cast<std::size_t>(r) >= rays_.size()) {
        throw InvalidArgument("basis " + std::to_string(b) + " refers to missing ray " +
                              std::to_string(r));
      }
      m.col(k) = rays_[r];
    }
    if (orthonormality_defect(m) > tol::ray) {
      throw InvalidArgument("basis " + std::to_string(b) + " is not orthonormal");
    }
  }
  for (std::size_t a = 0; a < rays_.size(); ++a) {
    for (std::size_t c = a + 1; c < rays_.size(); ++c) {
      if (std::abs(rays_[a].dot(rays_[c])) < tol::ray) {
        orthogonal_.emplace_back(static_cast<int>(a), static_cast<int>(c));
      }
    }
  }
}

RayBasisSet RayBasisSet::from_bases(int dim,
                                    const std::vector<std::vector<ComplexVector>>& bases) {
  std::vector<ComplexVector> rays;
  std::vector<std::vector<int>> index;
  for (const auto& basis : bases) {
    std::vector<int> idx;
    for (const auto& v : basis) {
      const ComplexVector c = canonical_ray(v.normalized());
      auto it = std::find_if(rays.begin(), rays.end(),
                             [&](const ComplexVector& r) { return same_ray(r, c); });
      if (it == rays.end()) {
        rays.push_back(c);
        it = rays.end() - 1;
      }
      idx.push_back(static_cast<int>(it - rays.begin()));
    }
    index.push_back(std::move(idx));
  }
  return RayBasisSet(dim, std::move(rays), std::move(index));
}

RayBasisSet RayBasisSet::restrict_to_bases(const std::vector<int>& which) const {
  std::vector<std::vector<int>> kept;
  for (int b : which) {
    if (b < 0 || static_cast<std::size_t>(b) >= bases_.size()) {
      throw InvalidArgument("restrict_to_bases: no basis " + std::to_string(b));
    }
    kept.push_back(bases_[b]);
  }
  return RayBasisSet(dim_, rays_, std::move(kept));
}

namespace {

class Search {
 public:
  Search(const RayBasisSet& set, const ColoringOptions& opts)
      : set_(set), val_(set.ray_count(), -1), in_bases_(set.ray_count()),
        exclude_(set.ray_count()) {
    for (std::size_t b = 0; b < set.basis_count(); ++b) {
      const auto& basis = set.bases()[b];
      for (int r : basis) {
        in_bases_[r].push_back(static_cast<int>(b));
        for (int s : basis) {
          if (s != r) exclude_[r].push_back(s);
        }
      }
    }
    if (opts.exclude_orthogonal_pairs) {
      for (auto [a, c] : set.orthogonal_pairs()) {
        exclude_[a].push_back(c);
        exclude_[c].push_back(a);
      }
    }
    for (auto& e : exclude_) {
      std::sort(e.begin(), e.end());
      e.erase(std::unique(e.begin(), e.end()), e.end());
    }
    for (std::size_t r = 0; r < set.ray_count(); ++r) {
      if (!in_bases_[r].empty()) order_.push_back(static_cast<int>(r));
    }
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return in_bases_[a].size() > in_bases_[b].size();
    });
  }

  ColoringResult run() {
    if (dfs()) {
      std::vector<int> out(val_.size());
      for (std::size_t r = 0; r < val_.size(); ++r) out[r] = val_[r] == 1 ? 1 : 0;
      return Coloring{std::move(out), nodes_};
    }
    return Noncolorable{nodes_};
  }

 private:
  bool dfs() {
    const auto next = std::find_if(order_.begin(), order_.end(), [&](int r) { return val_[r] < 0; });
    if (next == order_.end()) return true;
    for (int v : {1, 0}) {
      ++nodes_;
      const std::size_t mark = trail_.size();
      if (assign(*next, v) && dfs()) return true;
      undo(mark);
    }
    return false;
  }

  bool assign(int ray, int value) {
    queue_.assign(1, {ray, value});
    for (std::size_t q = 0; q < queue_.size(); ++q) {
      const auto [r, v] = queue_[q];
      if (val_[r] == v) continue;
      if (val_[r] >= 0) return false;
      val_[r] = v;
      trail_.push_back(r);
      if (v == 1) {
        for (int s : exclude_[r]) queue_.push_back({s, 0});
      }
      for (int b : in_bases_[r]) {
        int ones = 0, open = 0, last = -1;
        for (int s : set_.bases()[b]) {
          if (val_[s] == 1) ++ones;
          if (val_[s] < 0) {
            ++open;
            last = s;
          }
        }
        if (ones > 1) return false;
        if (ones == 0 && open == 0) return false;
        if (ones == 0 && open == 1) queue_.push_back({last, 1});
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      val_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  const RayBasisSet& set_;
  std::vector<int> val_;
  std::vector<std::vector<int>> in_bases_;
  std::vector<std::vector<int>> exclude_;
  std::vector<int> order_;
  std::vector<int> trail_;
  std::vector<std::pair<int, int>> queue_;
  std::int64_t nodes_ = 0;
};

}  // namespace

ColoringResult find_coloring(const RayBasisSet& set, const ColoringOptions& opts) {
  return Search(set, opts).run();
}

bool verify_coloring(const RayBasisSet& set, const std::vector<int>& assignment,
                     const ColoringOptions& opts) {
  if (assignment.size() != set.ray_count()) return false;
  for (int v : assignment) {
    if (v != 0 && v != 1) return false;
  }
  for (const auto& basis : set.bases()) {
    int ones = 0;
    for (int r : basis) ones += assignment[r];
    if (ones != 1) return false;
  }
  if (opts.exclude_orthogonal_pairs) {
    for (auto [a, c] : set.orthogonal_pairs()) {
      if (assignment[a] == 1 && assignment[c] == 1) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> basis_prefixes(std::size_t n) {
  std::vector<std::vector<int>> out;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<int> prefix(k);
    std::iota(prefix.begin(), prefix.end(), 0);
    out.push_back(std::move(prefix));
  }
  return out;
}

std::vector<KsDemoStep> ks_value_assignment_demo(const RayBasisSet& set,
                                                 const std::vector<std::vector<int>>& subsets,
                                                 const ColoringOptions& opts) {
  std::vector<KsDemoStep> steps;
  for (const auto& subset : subsets) {
    const RayBasisSet sub = set.restrict_to_bases(subset);
    ColoringResult result = find_coloring(sub, opts);
    bool verified = false;
    if (const auto* c = std::get_if<Coloring>(&result)) {
      verified = verify_coloring(sub, c->assignment, opts);
    }
    steps.push_back({subset, std::move(result), verified});
  }
  return steps;
}

Eigen::MatrixXd epr_correlation(const ComplexMatrix& basis, bool conjugate_right) {
  const Eigen::Index d = basis.rows();
  if (d < 1 || basis.cols() != d) throw InvalidArgument("epr_correlation: basis must be d x d");
  if (orthonormality_defect(basis) > tol::ray) {
    throw InvalidArgument("epr_correlation: basis is not orthonormal");
  }
  ComplexVector phi = ComplexVector::Zero(d * d);
  for (Eigen::Index k = 0; k < d; ++k) phi(k * d + k) = 1.0 / std::sqrt(static_cast<double>(d));

  const ComplexMatrix right = conjugate_right ? ComplexMatrix(basis.conjugate()) : basis;
  Eigen::MatrixXd p(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      ComplexVector outcome(d * d);
      for (Eigen::Index a = 0; a < d; ++a) outcome.segment(a * d, d) = basis(a, i) * right.col(j);
      p(i, j) = std::norm(outcome.dot(phi));
    }
    const double marginal = p.row(i).sum();
    p.row(i) /= marginal;
  }
  return p;
}

double off_diagonal_mass(const Eigen::MatrixXd& p) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) total += p.row(i).sum() - p(i, i);
  return total / static_cast<double>(p.rows());
}

}  // namespace siccalc

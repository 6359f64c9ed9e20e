#include "siccalc/sic_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "siccalc/random.hpp"

namespace siccalc {

namespace {

// w^n for w = exp(2 pi i / d), reduced mod d so large exponents stay exact.
Complex root_of_unity(int n, int d) {
  const int r = ((n % d) + d) % d;
  const double angle = 2.0 * std::numbers::pi * r / d;
  return {std::cos(angle), std::sin(angle)};
}

std::vector<Complex> roots_table(int d) {
  std::vector<Complex> w(d);
  for (int n = 0; n < d; ++n) w[n] = root_of_unity(n, d);
  return w;
}

// D_pq^dagger v = Z^{-q} X^{-p} v, (D^dagger v)_m = w^{-qm} v_{m+p}.
ComplexVector displace_adjoint(const ComplexVector& v, int p, int q,
                               const std::vector<Complex>& w) {
  const int d = static_cast<int>(v.size());
  ComplexVector out(d);
  for (int m = 0; m < d; ++m) {
    out(m) = std::conj(w[(q * m) % d]) * v((m + p) % d);
  }
  return out;
}

ComplexVector displace_with(const ComplexVector& v, int p, int q, const std::vector<Complex>& w) {
  const int d = static_cast<int>(v.size());
  ComplexVector out(d);
  for (int k = 0; k < d; ++k) {
    const int src = ((k - p) % d + d) % d;
    out(k) = w[(q * src) % d] * v(src);
  }
  return out;
}

std::vector<Complex> overlaps_with(const ComplexVector& f, const std::vector<Complex>& w) {
  const int d = static_cast<int>(f.size());
  std::vector<Complex> a(static_cast<std::size_t>(d) * d);
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      Complex acc = 0.0;
      for (int k = 0; k < d; ++k) {
        const int src = ((k - p) % d + d) % d;
        acc += std::conj(f(k)) * w[(q * src) % d] * f(src);
      }
      a[p * d + q] = acc;
    }
  }
  return a;
}

// sum_{k != 0} weight_k * (conj(a_k) D_k f + a_k D_k^dagger f), times 4.
ComplexVector weighted_gradient(const ComplexVector& f, const std::vector<Complex>& a,
                                const std::vector<double>& weight,
                                const std::vector<Complex>& w) {
  const int d = static_cast<int>(f.size());
  ComplexVector g = ComplexVector::Zero(d);
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      const int idx = p * d + q;
      if (idx == 0) continue;
      g += weight[idx] * (std::conj(a[idx]) * displace_with(f, p, q, w) +
                          a[idx] * displace_adjoint(f, p, q, w));
    }
  }
  return 4.0 * g;
}

double excess_with(const ComplexVector& f, const std::vector<Complex>& w) {
  const int d = static_cast<int>(f.size());
  const double target = 1.0 / (d + 1);
  const auto a = overlaps_with(f, w);
  double acc = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    const double dev = std::norm(a[k]) - target;
    acc += dev * dev;
  }
  return acc;
}

}  // namespace

Fiducial::Fiducial(ComplexVector v) : v_(std::move(v)) {
  if (v_.size() == 0) throw InvalidArgument("fiducial vector is empty");
  const double n = v_.norm();
  if (!(std::abs(n - 1.0) <= 1e-12)) {
    throw InvalidArgument("fiducial vector has norm " + std::to_string(n) + ", expected 1");
  }
}

Fiducial Fiducial::normalized(const ComplexVector& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw InvalidArgument("fiducial vector is zero");
  return Fiducial(v / n);
}

ComplexVector displace(const ComplexVector& v, int p, int q) {
  const int d = static_cast<int>(v.size());
  return displace_with(v, ((p % d) + d) % d, ((q % d) + d) % d, roots_table(d));
}

std::vector<Complex> displacement_overlaps(const ComplexVector& f) {
  return overlaps_with(f, roots_table(static_cast<int>(f.size())));
}

std::vector<HermitianOperator> weyl_heisenberg_orbit(const Fiducial& f) {
  const int d = f.dim();
  const auto w = roots_table(d);
  std::vector<HermitianOperator> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      out.push_back(projector_from_vector(displace_with(f.vector(), p, q, w)));
    }
  }
  return out;
}

double frame_potential(const ComplexVector& f) {
  const auto a = displacement_overlaps(f);
  double acc = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    const double x = std::norm(a[k]);
    acc += x * x;
  }
  return acc;
}

double frame_potential(const Fiducial& f) { return frame_potential(f.vector()); }

double frame_potential_minimum(int d) { return static_cast<double>(d - 1) / (d + 1); }

ComplexVector frame_potential_gradient(const ComplexVector& f) {
  const int d = static_cast<int>(f.size());
  const auto w = roots_table(d);
  const auto a = overlaps_with(f, w);
  std::vector<double> weight(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) weight[k] = std::norm(a[k]);
  return weighted_gradient(f, a, weight, w);
}

double frame_potential_excess(const ComplexVector& f) {
  return excess_with(f, roots_table(static_cast<int>(f.size())));
}

double SicVerification::max_deviation() const {
  return std::max({max_offdiagonal, max_diagonal, identity_defect});
}

SicFrame::SicFrame(int dim, std::vector<HermitianOperator> projectors)
    : dim_(dim), projectors_(std::move(projectors)) {
  if (dim_ < 1) throw InvalidArgument("SIC frame dimension must be positive");
  if (projectors_.size() != static_cast<std::size_t>(dim_) * dim_) {
    throw InvalidArgument("SIC frame in dimension " + std::to_string(dim_) + " needs " +
                          std::to_string(dim_ * dim_) + " projectors, got " +
                          std::to_string(projectors_.size()));
  }
  for (const auto& p : projectors_) {
    if (p.dim() != dim_) throw DimensionMismatch("SIC frame projector has wrong dimension");
  }
  quality_ = verify_sic(*this).max_deviation();
}

SicFrame SicFrame::from_fiducial(const Fiducial& f) {
  SicFrame frame(f.dim(), weyl_heisenberg_orbit(f));
  frame.fiducial_ = f;
  return frame;
}

SicVerification verify_sic(const SicFrame& frame) {
  return verify_sic(frame.dim(), frame.projectors());
}

SicVerification verify_sic(int d, std::span<const HermitianOperator> projectors) {
  const std::size_t n = static_cast<std::size_t>(d) * d;
  if (d < 1 || projectors.size() != n) {
    throw InvalidArgument("verify_sic: expected " + std::to_string(n) + " projectors, got " +
                          std::to_string(projectors.size()));
  }
  for (const auto& p : projectors) {
    if (p.dim() != d) throw DimensionMismatch("verify_sic: projector has wrong dimension");
  }

  SicVerification out;
  const double target = 1.0 / (d + 1);
  Eigen::MatrixXd gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double t = trace_product(projectors[i], projectors[j]);
      gram(i, j) = t;
      gram(j, i) = t;
      if (i == j) {
        out.max_diagonal = std::max(out.max_diagonal, std::abs(t - 1.0));
      } else {
        out.max_offdiagonal = std::max(out.max_offdiagonal, std::abs(t - target));
      }
    }
  }

  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (const auto& p : projectors) total += p.matrix();
  out.identity_defect = max_abs_entry(total / d - ComplexMatrix::Identity(d, d));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  out.gram_rank = static_cast<int>((ev.array() > 1e-9 * scale).count());
  out.independent = out.gram_rank == static_cast<int>(n);
  return out;
}

Fiducial bundled_fiducial(int d) {
  if (d == 2) {
    const double cos_theta = 1.0 / std::sqrt(3.0);
    const double c = std::sqrt((1.0 + cos_theta) / 2.0);
    const double s = std::sqrt((1.0 - cos_theta) / 2.0);
    ComplexVector v(2);
    v << c, std::polar(s, std::numbers::pi / 4.0);
    return Fiducial::normalized(v);
  }
  if (d == 3) {
    ComplexVector v(3);
    v << 0.0, 1.0, -1.0;
    return Fiducial::normalized(v);
  }
  throw UnsupportedDimension("no bundled fiducial for d = " + std::to_string(d) +
                             " (bundled: 2, 3)");
}

DescentResult descend_frame_potential(ComplexVector start, int max_iters,
                                      double gradient_tolerance) {
  const int d = static_cast<int>(start.size());
  const auto w = roots_table(d);
  const double target = 1.0 / (d + 1);

  ComplexVector f = start / start.norm();
  double excess = excess_with(f, w);
  double step = 0.1;
  int it = 0;
  std::vector<double> weight(static_cast<std::size_t>(d) * d);
  for (; it < max_iters; ++it) {
    const auto a = overlaps_with(f, w);
    for (std::size_t k = 0; k < a.size(); ++k) weight[k] = std::norm(a[k]) - target;
    ComplexVector g = weighted_gradient(f, a, weight, w);
    // Project onto the tangent space of the unit sphere.
    g -= f.dot(g).real() * f;
    const double gnorm2 = g.squaredNorm();
    if (std::sqrt(gnorm2) < gradient_tolerance) break;

    step = std::min(step * 2.0, 1e3);
    bool accepted = false;
    while (step > 1e-20) {
      ComplexVector trial = f - step * g;
      trial /= trial.norm();
      const double trial_excess = excess_with(trial, w);
      if (trial_excess <= excess - 1e-4 * step * gnorm2) {
        f = std::move(trial);
        excess = trial_excess;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return {std::move(f), excess, it};
}

DescentResult polish_fiducial(ComplexVector start, int max_iters) {
  const int d = static_cast<int>(start.size());
  const auto w = roots_table(d);
  const double target = 1.0 / (d + 1);
  const int residuals = d * d - 1;

  ComplexVector f = start / start.norm();
  double excess = excess_with(f, w);
  int it = 0;
  Eigen::MatrixXd jac(residuals, 2 * d);
  Eigen::VectorXd res(residuals);
  for (; it < max_iters && excess > 0.0; ++it) {
    const auto a = overlaps_with(f, w);
    for (int k = 1; k <= residuals; ++k) {
      const int p = k / d;
      const int q = k % d;
      // Gradient of |a_k|^2 with respect to (Re f, Im f), tangent to the sphere.
      ComplexVector g = 2.0 * (std::conj(a[k]) * displace_with(f, p, q, w) +
                               a[k] * displace_adjoint(f, p, q, w));
      g -= f.dot(g).real() * f;
      jac.row(k - 1).head(d) = g.real().transpose();
      jac.row(k - 1).tail(d) = g.imag().transpose();
      res(k - 1) = std::norm(a[k]) - target;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    const Eigen::VectorXd step = svd.solve(res);
    ComplexVector trial(d);
    for (int m = 0; m < d; ++m) trial(m) = f(m) - Complex(step(m), step(d + m));
    trial /= trial.norm();
    const double trial_excess = excess_with(trial, w);
    if (!(trial_excess < excess)) break;
    f = std::move(trial);
    excess = trial_excess;
  }
  return {std::move(f), excess, it};
}

FiducialSearchResult find_fiducial(int d, std::uint64_t seed, int restarts, int max_iters,
                                   const FiducialSearchOptions& options) {
  if (d < 2) throw InvalidArgument("find_fiducial: d must be at least 2");
  if (restarts < 1) throw InvalidArgument("find_fiducial: need at least one restart");

  struct Candidate {
    ComplexVector f;
    double quality = 0.0;
    int iterations = 0;
  };
  std::vector<Candidate> results(restarts);

  auto run_one = [&](int k) {
    Rng rng(seed + static_cast<std::uint64_t>(k));
    const ComplexVector start = random_unit_vector(d, rng);
    const DescentResult coarse =
        descend_frame_potential(start, max_iters, options.gradient_tolerance);
    const DescentResult fine = polish_fiducial(coarse.fiducial);
    const Fiducial fid = Fiducial::normalized(fine.fiducial);
    results[k] = {fid.vector(), SicFrame::from_fiducial(fid).quality(),
                  coarse.iterations + fine.iterations};
  };

  const int threads = std::clamp(options.threads, 1, restarts);
  if (threads == 1) {
    for (int k = 0; k < restarts; ++k) run_one(k);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int k = next++; k < restarts; k = next++) run_one(k);
      });
    }
  }

  int best = 0;
  for (int k = 1; k < restarts; ++k) {
    if (results[k].quality < results[best].quality) best = k;
  }
  FiducialSearchResult out{Fiducial(results[best].f), results[best].quality, best,
                           results[best].iterations};
  if (!(out.quality <= options.tolerance)) {
    throw NoSicFound("find_fiducial: best quality " + std::to_string(out.quality) +
                         " after " + std::to_string(restarts) + " restarts in d = " +
                         std::to_string(d),
                     std::move(out));
  }
  return out;
}

}  // namespace siccalc

#include "sic_calc/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "siccalc/consistency_geometry.hpp"
#include "siccalc/contextuality.hpp"
#include "siccalc/random.hpp"
#include "siccalc/sic_probability.hpp"
#include "siccalc/urgleichung.hpp"

namespace sic_calc {

using namespace siccalc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CriterionResult start(int id, const std::string& title) {
  CriterionResult r;
  r.id = id;
  r.title = title;
  return r;
}

std::vector<int> sweep(const AcceptanceConfig& cfg, std::vector<int> fallback) {
  return cfg.dims.empty() ? fallback : cfg.dims;
}

// Independent stream per (criterion, dimension).
Rng stream(const AcceptanceConfig& cfg, int id, int d) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(d)};
  return Rng(seq);
}

DensityOperator half_mixed(int d, Rng& rng) {
  const DensityOperator sigma = random_density(d, d, rng);
  const ComplexMatrix m = 0.5 * sigma.matrix() + (0.5 / d) * ComplexMatrix::Identity(d, d);
  return DensityOperator(HermitianOperator(m));
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

CriterionResult sic_existence(const AcceptanceConfig& cfg, FrameCache& frames) {
  CriterionResult r = start(1, "SIC existence and verification");
  r.metric = "max_deviation";
  r.bound = "bundled < 1e-12, searched < 1e-8, search < 300 s";
  r.pass = true;
  Json per_dim = Json::array();
  for (int d : sweep(cfg, {2, 3, 4, 5, 6, 7})) {
    const bool bundled = d <= 3;
    const SicVerification v = verify_sic(frames.get(d));
    const double limit = bundled ? 1e-12 : 1e-8;
    const bool ok = v.independent && v.max_deviation() < limit;
    r.pass = r.pass && ok;
    r.value = std::max(r.value, v.max_deviation());
    per_dim.push_back({{"dim", d},
                       {"source", bundled ? "bundled" : "search"},
                       {"max_deviation", v.max_deviation()},
                       {"gram_rank", v.gram_rank},
                       {"pass", ok}});
  }
  const bool fast = frames.search_seconds() < 300.0;
  r.pass = r.pass && fast;
  r.details = {{"frames", per_dim}, {"search_within_budget", fast}};
  return r;
}

CriterionResult roundtrip(const AcceptanceConfig& cfg, FrameCache& frames) {
  CriterionResult r = start(2, "Reconstruction roundtrip");
  r.metric = "max_entry_error";
  r.bound = "< 1e-11";
  Json per_dim = Json::array();
  for (int d : sweep(cfg, {2, 3, 4, 5, 6})) {
    const SicFrame& frame = frames.get(d);
    Rng rng = stream(cfg, 2, d);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const DensityOperator rho = random_density(d, 1 + k % d, rng);
      const HermitianOperator back = prob_to_operator(state_to_prob(rho, frame), frame);
      worst = std::max(worst, max_abs_entry(back.matrix() - rho.matrix()));
    }
    r.value = std::max(r.value, worst);
    per_dim.push_back({{"dim", d}, {"states", 100}, {"max_entry_error", worst}});
  }
  r.pass = r.value < 1e-11;
  r.details = {{"per_dim", per_dim}};
  return r;
}

CriterionResult purity(const AcceptanceConfig& cfg, FrameCache& frames) {
  CriterionResult r = start(3, "Purity conditions");
  r.metric = "max_pure_deviation";
  r.bound = "pure < 1e-9, mixed quadratic gap > 1e-4";
  double min_gap = std::numeric_limits<double>::infinity();
  Json per_dim = Json::array();
  for (int d : sweep(cfg, {2, 3, 4, 5, 6})) {
    const SicFrame& frame = frames.get(d);
    const StructureTensor tensor = structure_tensor(frame);
    Rng rng = stream(cfg, 3, d);
    double quad = 0.0, cubic = 0.0, gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100; ++k) {
      const ProbVector p = state_to_prob(DensityOperator::pure(random_unit_vector(d, rng)), frame);
      const PurityConditions c = purity_conditions(p, tensor);
      quad = std::max(quad, std::abs(c.quadratic - PurityConditions::quadratic_target(d)));
      cubic = std::max(cubic, std::abs(c.cubic - PurityConditions::cubic_target(d)));
    }
    for (int k = 0; k < 100; ++k) {
      const ProbVector p = state_to_prob(half_mixed(d, rng), frame);
      gap = std::min(gap, PurityConditions::quadratic_target(d) - p.norm_squared());
    }
    r.value = std::max({r.value, quad, cubic});
    min_gap = std::min(min_gap, gap);
    per_dim.push_back({{"dim", d},
                       {"pure_quadratic_error", quad},
                       {"pure_cubic_error", cubic},
                       {"mixed_min_quadratic_gap", gap}});
  }
  r.pass = r.value < 1e-9 && min_gap > 1e-4;
  r.details = {{"per_dim", per_dim}, {"mixed_min_quadratic_gap", min_gap}};
  return r;
}

CriterionResult urgleichung_born(const AcceptanceConfig& cfg, FrameCache& frames) {
  CriterionResult r = start(4, "Urgleichung-Born equivalence");
  r.metric = "max_error";
  r.bound = "< 1e-10";
  Json per_dim = Json::array();
  for (int d : sweep(cfg, {2, 3, 4, 5, 6})) {
    const SicFrame& frame = frames.get(d);
    Rng rng = stream(cfg, 4, d);
    double born_err = 0.0, vn_err = 0.0;
    for (int k = 0; k < 100; ++k) {
      const DensityOperator rho = random_density(d, 1 + k % d, rng);
      const Povm ground = random_povm(d, 2 + k % (d * d - 1), rng);
      const ProbVector p = state_to_prob(rho, frame);
      const GroundDistribution q =
          quantum_total_probability(p, conditional_matrix(frame, ground), d);
      born_err = std::max(born_err, max_abs_diff(q.values, born_probabilities(rho, ground)));
    }
    for (int k = 0; k < 100; ++k) {
      const DensityOperator rho = random_density(d, 1 + k % d, rng);
      const Povm ground = Povm::from_basis(random_unitary(d, rng));
      const ProbVector p = state_to_prob(rho, frame);
      const ConditionalMatrix cond = conditional_matrix(frame, ground);
      const std::vector<double> q = quantum_total_probability(p, cond, d).values;
      std::vector<double> lifted = classical_total_probability(p, cond);
      for (double& x : lifted) x = (d + 1.0) * x - 1.0;
      vn_err = std::max(vn_err, max_abs_diff(q, lifted));
    }
    r.value = std::max({r.value, born_err, vn_err});
    per_dim.push_back({{"dim", d}, {"born_error", born_err}, {"von_neumann_error", vn_err}});
  }
  r.pass = r.value < 1e-10;
  r.details = {{"per_dim", per_dim}};
  return r;
}

CriterionResult monte_carlo(const AcceptanceConfig& cfg, FrameCache& frames) {
  CriterionResult r = start(5, "Monte Carlo cascade");
  r.metric = "max_standard_errors";
  r.bound = "< 4, total variation > 0.05, < 10 s";
  constexpr std::int64_t n = 1'000'000;
  const int d = 2;
  const SicFrame& frame = frames.get(d);

  // |0> against the basis tilted 30 degrees on the Bloch sphere.
  const double half = std::acos(-1.0) / 12.0;
  ComplexMatrix basis(2, 2);
  basis << std::cos(half), -std::sin(half), std::sin(half), std::cos(half);
  ComplexVector zero(2);
  zero << 1.0, 0.0;
  const CascadeExperiment exp(frame, Povm::from_basis(basis), DensityOperator::pure(zero));

  const ProbVector p = sky_probabilities(exp);
  const ConditionalMatrix cond = conditional_matrix(exp);
  const std::vector<double> classical = classical_total_probability(p, cond);
  const std::vector<double> quantum = quantum_total_probability(p, cond, d).values;
  const std::vector<double> born = born_probabilities(exp.prior(), exp.ground());

  const auto t0 = Clock::now();
  const std::vector<double> via_sky =
      monte_carlo_cascade(exp, Context::ViaSky, n, cfg.seed, cfg.threads);
  const std::vector<double> direct =
      monte_carlo_cascade(exp, Context::GroundDirect, n, cfg.seed + 1, cfg.threads);
  const double elapsed = seconds_since(t0);

  auto z_score = [&](const std::vector<double>& freq, const std::vector<double>& expect) {
    double worst = 0.0;
    for (std::size_t j = 0; j < freq.size(); ++j) {
      const double se = std::sqrt(expect[j] * (1.0 - expect[j]) / static_cast<double>(n));
      worst = std::max(worst, std::abs(freq[j] - expect[j]) / se);
    }
    return worst;
  };
  const double z_sky = z_score(via_sky, classical);
  const double z_direct = z_score(direct, quantum);
  double tv = 0.0;
  for (std::size_t j = 0; j < classical.size(); ++j) tv += 0.5 * std::abs(classical[j] - quantum[j]);

  r.value = std::max(z_sky, z_direct);
  r.pass = z_sky < 4.0 && z_direct < 4.0 && tv > 0.05 && elapsed < 10.0 &&
           max_abs_diff(quantum, born) < 1e-12;
  r.details = {{"samples", n},          {"classical", classical}, {"quantum", quantum},
               {"via_sky", via_sky},    {"direct", direct},       {"z_via_sky", z_sky},
               {"z_direct", z_direct},  {"total_variation", tv}};
  return r;
}

CriterionResult consistency_bounds(const AcceptanceConfig& cfg, FrameCache& frames) {
  CriterionResult r = start(6, "Consistency bounds");
  r.metric = "max_hs_identity_error";
  r.bound = "bounds within 1e-12, identity < 1e-10";
  bool in_bounds = true;
  Json per_dim = Json::array();
  for (int d : sweep(cfg, {2, 3, 4})) {
    const SicFrame& frame = frames.get(d);
    Rng rng = stream(cfg, 6, d);
    const double lo = consistency_lower_bound(d), hi = consistency_upper_bound(d);
    double min_dot = 1.0, max_dot = 0.0, hs = 0.0;
    for (int k = 0; k < 10'000; ++k) {
      const DensityOperator rho = random_density(d, 1 + k % d, rng);
      const DensityOperator sigma = random_density(d, 1 + (k / d) % d, rng);
      const ProbVector p = state_to_prob(rho, frame);
      const ProbVector q = state_to_prob(sigma, frame);
      const double dot = p.dot(q);
      min_dot = std::min(min_dot, dot);
      max_dot = std::max(max_dot, dot);
      hs = std::max(hs, std::abs(trace_product(rho.op(), sigma.op()) - (d * (d + 1.0) * dot - 1.0)));
    }
    const bool ok = min_dot >= lo - 1e-12 && max_dot <= hi + 1e-12;
    in_bounds = in_bounds && ok;
    r.value = std::max(r.value, hs);
    per_dim.push_back({{"dim", d},
                       {"pairs", 10'000},
                       {"min_dot", min_dot},
                       {"max_dot", max_dot},
                       {"lower_bound", lo},
                       {"upper_bound", hi},
                       {"hs_identity_error", hs}});
  }
  r.pass = in_bounds && r.value < 1e-10;
  r.details = {{"per_dim", per_dim}};
  return r;
}

CriterionResult maximality(const AcceptanceConfig& cfg, FrameCache& frames) {
  CriterionResult r = start(7, "Maximality witness");
  r.metric = "max_dot_minus_lower_bound";
  r.bound = "< -1e-12";
  r.value = -std::numeric_limits<double>::infinity();
  r.pass = true;
  Json per_dim = Json::array();
  for (int d : sweep(cfg, {2, 3})) {
    const SicFrame& frame = frames.get(d);
    Rng rng = stream(cfg, 7, d);
    std::exponential_distribution<double> expo(1.0);
    const double lo = consistency_lower_bound(d);
    const std::size_t n = frame.size();
    int found = 0, drawn = 0;
    double worst = -std::numeric_limits<double>::infinity();
    bool all_witnessed = true;
    while (found < 100 && drawn < 1'000'000) {
      ++drawn;
      std::vector<double> x(n);
      double total = 0.0;
      for (double& v : x) total += (v = expo(rng));
      for (double& v : x) v /= total;
      const SimplexPoint p(ProbVector(d, std::move(x)));
      if (is_valid_state(p.prob(), frame).valid) continue;
      ++found;
      const MaximalityResult m = maximality_witness(p, frame);
      const auto* w = std::get_if<MaximalityWitness>(&m);
      if (w == nullptr) {
        all_witnessed = false;
        continue;
      }
      worst = std::max(worst, w->dot - lo);
    }
    const bool ok = found == 100 && all_witnessed && worst < -1e-12;
    r.pass = r.pass && ok;
    r.value = std::max(r.value, worst);
    per_dim.push_back({{"dim", d},
                       {"invalid_vectors", found},
                       {"draws", drawn},
                       {"max_dot_minus_lower_bound", worst}});
  }
  r.details = {{"per_dim", per_dim}};
  return r;
}

CriterionResult zero_count(const AcceptanceConfig& cfg, FrameCache& frames) {
  CriterionResult r = start(8, "Zero-count bound");
  r.metric = "max_zeros_over_bound";
  r.bound = "<= 0, d=2 antipodal has exactly 1 zero";
  r.value = -std::numeric_limits<double>::infinity();
  Json per_dim = Json::array();
  bool ok = true;
  for (int d : sweep(cfg, {2, 3, 4})) {
    const SicFrame& frame = frames.get(d);
    Rng rng = stream(cfg, 8, d);
    int most = 0;
    for (int k = 0; k < 1000; ++k) {
      const SimplexPoint p(state_to_prob(DensityOperator::pure(random_unit_vector(d, rng)), frame));
      const ZeroCount z = zero_count_bound(p, d);
      ok = ok && z.ok;
      most = std::max(most, z.zeros);
    }
    const int bound = d * (d - 1) / 2;
    r.value = std::max(r.value, static_cast<double>(most - bound));
    per_dim.push_back({{"dim", d}, {"states", 1000}, {"max_zeros", most}, {"bound", bound}});
  }
  const SicFrame& qubit = frames.get(2);
  const DensityOperator antipodal(HermitianOperator::identity(2) - qubit[0]);
  const SimplexPoint p(state_to_prob(antipodal, qubit));
  const ZeroCount z = zero_count_bound(p, 2);
  r.pass = ok && z.zeros == 1 && z.ok;
  r.details = {{"per_dim", per_dim},
               {"antipodal_p", std::vector<double>(p.values().begin(), p.values().end())},
               {"antipodal_zeros", z.zeros}};
  return r;
}

CriterionResult saturating(const AcceptanceConfig& cfg, FrameCache& frames) {
  CriterionResult r = start(9, "Saturating families");
  r.metric = "max_centroid_error";
  r.bound = "m = d, centroid within 1e-11";
  r.pass = true;
  Json per_dim = Json::array();
  for (int d : sweep(cfg, {2, 3, 4})) {
    const SicFrame& frame = frames.get(d);
    Rng rng = stream(cfg, 9, d);
    double worst = 0.0, worst_gg = 0.0;
    bool ok = true;
    for (int k = 0; k < 21; ++k) {
      const ComplexMatrix basis =
          k == 0 ? ComplexMatrix(ComplexMatrix::Identity(d, d)) : random_unitary(d, rng);
      std::vector<SimplexPoint> points;
      std::vector<double> centroid(frame.size(), 0.0);
      for (int c = 0; c < d; ++c) {
        points.emplace_back(state_to_prob(DensityOperator::pure(basis.col(c)), frame));
        for (std::size_t i = 0; i < centroid.size(); ++i) centroid[i] += points.back().values()[i] / d;
      }
      try {
        const SaturatingFamily s = saturating_family_bound(points, d);
        ok = ok && s.m == d && s.ok && s.centroid_is_center;
        worst_gg = std::max(worst_gg, std::abs(s.g_dot_g));
      } catch (const PreconditionViolated&) {
        ok = false;
      }
      for (double c : centroid) worst = std::max(worst, std::abs(c - 1.0 / (d * d)));
    }
    r.pass = r.pass && ok && worst < 1e-11;
    r.value = std::max(r.value, worst);
    per_dim.push_back({{"dim", d}, {"bases", 21}, {"max_centroid_error", worst}, {"max_g_dot_g", worst_gg}});
  }
  r.details = {{"per_dim", per_dim}};
  return r;
}

CriterionResult basis_distributions(const AcceptanceConfig& cfg, FrameCache& frames) {
  CriterionResult r = start(10, "Basis distributions");
  r.metric = "max_error";
  r.bound = "< 1e-12";
  Json per_dim = Json::array();
  for (int d : sweep(cfg, {2, 3, 4, 5, 6})) {
    const SicFrame& frame = frames.get(d);
    const ConditionalMatrix cond = conditional_matrix(frame, sky_as_povm(frame));
    const double target = 2.0 / (d * (d + 1.0));
    double entry = 0.0, norm = 0.0;
    for (int k = 0; k < d * d; ++k) {
      const ProbVector post = bayes_posterior(cond, k);
      entry = std::max(entry, max_abs_diff(post.values(), basis_distribution(d, k).values()));
      norm = std::max(norm, std::abs(post.norm_squared() - target));
    }
    r.value = std::max({r.value, entry, norm});
    per_dim.push_back({{"dim", d}, {"max_entry_error", entry}, {"max_norm_error", norm}});
  }
  r.pass = r.value < 1e-12;
  r.details = {{"per_dim", per_dim}};
  return r;
}

bool one_per_basis(const RayBasisSet& set, const std::vector<int>& a) {
  for (const auto& basis : set.bases()) {
    int ones = 0;
    for (int ray : basis) ones += a.at(ray) == 1;
    if (ones != 1) return false;
  }
  return true;
}

CriterionResult kochen_specker(const AcceptanceConfig&, FrameCache&) {
  CriterionResult r = start(11, "KS noncolorability");
  r.metric = "search_nodes";
  r.bound = "noncolorable in < 1 s, colorable prefixes verified";
  const RayBasisSet set = rayset_from_json(read_json_file(data_file("peres33.json")));

  const auto t0 = Clock::now();
  const ColoringResult full = find_coloring(set);
  const double elapsed = seconds_since(t0);
  const auto* nc = std::get_if<Noncolorable>(&full);

  const std::vector<KsDemoStep> steps =
      ks_value_assignment_demo(set, basis_prefixes(set.basis_count() - 1));
  int colorable = 0;
  bool verified = true;
  int first_blocked = 0;
  for (const auto& s : steps) {
    if (const auto* c = std::get_if<Coloring>(&s.result)) {
      ++colorable;
      const RayBasisSet sub = set.restrict_to_bases(s.bases);
      verified = verified && s.verified && one_per_basis(sub, c->assignment);
    } else if (first_blocked == 0) {
      first_blocked = static_cast<int>(s.bases.size());
    }
  }
  r.value = nc ? static_cast<double>(nc->nodes) : 0.0;
  r.pass = nc != nullptr && elapsed < 1.0 && verified && colorable > 0;
  r.details = {{"rays", set.ray_count()},
               {"bases", set.basis_count()},
               {"noncolorable", nc != nullptr},
               {"search_nodes", nc ? nc->nodes : 0},
               {"proper_prefixes", steps.size()},
               {"colorable_prefixes", colorable},
               {"first_noncolorable_prefix", first_blocked},
               {"colorings_verified", verified}};
  return r;
}

CriterionResult epr(const AcceptanceConfig& cfg, FrameCache&) {
  CriterionResult r = start(12, "EPR correlations");
  r.metric = "max_conjugate_deviation";
  r.bound = "< 1e-12, unconjugated > 0.01 for >= 95%";
  constexpr int d = 3, trials = 1000;
  Rng rng = stream(cfg, 12, d);
  double worst = 0.0, row_err = 0.0;
  int deviating = 0;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix basis = random_unitary(d, rng);
    const Eigen::MatrixXd conj = epr_correlation(basis, true);
    worst = std::max(worst, (conj - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff());
    const Eigen::MatrixXd plain = epr_correlation(basis, false);
    row_err = std::max(row_err, (plain.rowwise().sum().array() - 1.0).abs().maxCoeff());
    if (off_diagonal_mass(plain) > 0.01) ++deviating;
  }
  const double fraction = static_cast<double>(deviating) / trials;
  r.value = worst;
  r.pass = worst < 1e-12 && fraction >= 0.95 && row_err < 1e-12;
  r.details = {{"dim", d},
               {"bases", trials},
               {"max_conjugate_deviation", worst},
               {"unconjugated_fraction_above_0.01", fraction},
               {"max_row_sum_error", row_err}};
  return r;
}

using Check = CriterionResult (*)(const AcceptanceConfig&, FrameCache&);

constexpr Check kChecks[] = {sic_existence,     roundtrip,  purity,     urgleichung_born,
                             monte_carlo,       consistency_bounds, maximality, zero_count,
                             saturating,        basis_distributions, kochen_specker, epr};

const char* const kTitles[] = {"SIC existence and verification", "Reconstruction roundtrip",
                               "Purity conditions", "Urgleichung-Born equivalence",
                               "Monte Carlo cascade", "Consistency bounds",
                               "Maximality witness", "Zero-count bound", "Saturating families",
                               "Basis distributions", "KS noncolorability", "EPR correlations"};

std::vector<CriterionResult> run_core(const AcceptanceConfig& cfg,
                                      const std::function<void(const CriterionResult&)>& on_done) {
  FrameCache frames(cfg);
  std::vector<CriterionResult> out;
  for (int i = 0; i < 12; ++i) {
    const auto t0 = Clock::now();
    CriterionResult r;
    try {
      r = kChecks[i](cfg, frames);
    } catch (const std::exception& e) {
      r = start(i + 1, kTitles[i]);
      r.metric = "error";
      r.bound = "no exception";
      r.details = {{"error", e.what()}};
    }
    r.seconds = seconds_since(t0);
    if (on_done) on_done(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string fmt(double v, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const SicFrame& FrameCache::get(int d) {
  if (auto it = frames_.find(d); it != frames_.end()) return it->second;
  if (d == 2 || d == 3) {
    return frames_.emplace(d, SicFrame::from_fiducial(bundled_fiducial(d))).first->second;
  }
  const auto t0 = Clock::now();
  FiducialSearchOptions opts;
  opts.threads = cfg_.threads;
  const FiducialSearchResult found = find_fiducial(d, cfg_.seed, cfg_.restarts, cfg_.max_iters, opts);
  search_seconds_ += seconds_since(t0);
  return frames_.emplace(d, SicFrame::from_fiducial(found.fiducial)).first->second;
}

Json report_json(const AcceptanceConfig& cfg, const std::vector<CriterionResult>& results) {
  Json criteria = Json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    criteria.push_back({{"id", r.id},
                        {"title", r.title},
                        {"pass", r.pass},
                        {"metric", r.metric},
                        {"value", r.value},
                        {"bound", r.bound},
                        {"details", r.details}});
  }
  return {{"seed", cfg.seed}, {"dims", cfg.dims}, {"criteria", criteria}, {"all_pass", all}};
}

std::vector<CriterionResult> run_acceptance(
    const AcceptanceConfig& cfg, bool with_determinism,
    const std::function<void(const CriterionResult&)>& on_done) {
  std::vector<CriterionResult> out = run_core(cfg, on_done);
  if (!with_determinism) return out;

  const auto t0 = Clock::now();
  const std::vector<CriterionResult> again = run_core(cfg, {});
  const std::string first = dump_json(report_json(cfg, out));
  const std::string second = dump_json(report_json(cfg, again));
  std::size_t mismatch = 0;
  while (mismatch < first.size() && mismatch < second.size() && first[mismatch] == second[mismatch]) {
    ++mismatch;
  }
  CriterionResult r = start(13, "Determinism");
  r.metric = "differing_bytes_from";
  r.bound = "identical JSON";
  r.pass = first == second;
  r.value = r.pass ? -1.0 : static_cast<double>(mismatch);
  r.details = {{"bytes", first.size()}, {"identical", r.pass}};
  r.seconds = seconds_since(t0);
  if (on_done) on_done(r);
  out.push_back(std::move(r));
  return out;
}

std::string report_csv(const std::vector<CriterionResult>& results) {
  std::string out = "id,title,pass,metric,value,bound\n";
  for (const auto& r : results) {
    out += std::to_string(r.id) + "," + csv_field(r.title) + "," + (r.pass ? "pass" : "fail") +
           "," + csv_field(r.metric) + "," + fmt(r.value, 17) + "," + csv_field(r.bound) + "\n";
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  [" << std::setw(2) << r.id << "] " << std::left
     << std::setw(32) << r.title << std::right << " " << r.metric << " = " << fmt(r.value, 4)
     << "  (" << r.bound << ")  " << std::fixed << std::setprecision(2) << r.seconds << " s";
  if (r.details.contains("error")) os << "  error: " << r.details["error"].get<std::string>();
  return os.str();
}

std::vector<int> parse_dims(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string part;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || v < 2 || v > 64) {
      throw InvalidArgument("--dims: bad dimension '" + s + "'");
    }
    return v;
  };
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(part));
      continue;
    }
    const int lo = to_int(part.substr(0, dots)), hi = to_int(part.substr(dots + 2));
    if (hi < lo) throw InvalidArgument("--dims: empty range '" + part + "'");
    for (int d = lo; d <= hi; ++d) out.push_back(d);
  }
  if (out.empty()) throw InvalidArgument("--dims: no dimensions given");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace sic_calc

#include "sic_calc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI/CLI11.hpp>

#include "sic_calc/acceptance.hpp"
#include "siccalc/consistency_geometry.hpp"
#include "siccalc/contextuality.hpp"
#include "siccalc/io.hpp"
#include "siccalc/random.hpp"
#include "siccalc/urgleichung.hpp"

namespace sic_calc {

using namespace siccalc;

namespace {

struct Options {
  std::string frame, state, ground, points, set, out, csv, dims;
  std::string path = "direct";
  int dim = 2;
  int epr_dim = 3;
  std::uint64_t seed = 42;
  std::int64_t samples = 1'000'000;
  int epr_bases = 1000;
  int restarts = 16;
  int max_iters = 2000;
  int threads = 1;
  double tol_sic = tol::sic_numeric;
  bool bundled = false;
  int subset = -1;
  bool no_orthogonality = false;
  bool check_consistency = false, maximality = false, zeros = false, saturating = false;
  bool skip_rerun = false;
};

class Session {
 public:
  Session(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  int find_sic();
  int verify_sic_cmd();
  int to_prob();
  int from_prob();
  int cascade();
  int geometry_audit();
  int ks_check();
  int epr_demo();
  int report();

 private:
  void emit(const Json& j) {
    if (o_.out.empty()) {
      out_ << dump_json(j);
    } else {
      write_text_file(o_.out, dump_json(j));
    }
  }

  SicFrame frame_for(int d) const {
    if (!o_.frame.empty()) {
      SicFrame f = frame_from_json(read_json_file(o_.frame));
      if (f.dim() != d) {
        throw DimensionMismatch("--frame has d = " + std::to_string(f.dim()) +
                                " but the input has d = " + std::to_string(d));
      }
      return f;
    }
    if (d != 2 && d != 3) {
      throw InvalidArgument("--frame is required for d = " + std::to_string(d));
    }
    return SicFrame::from_fiducial(bundled_fiducial(d));
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

int Session::find_sic() {
  if (o_.bundled) {
    emit(frame_to_json(SicFrame::from_fiducial(bundled_fiducial(o_.dim))));
    return kExitOk;
  }
  FiducialSearchOptions opts;
  opts.tolerance = o_.tol_sic;
  opts.threads = o_.threads;
  try {
    const FiducialSearchResult r = find_fiducial(o_.dim, o_.seed, o_.restarts, o_.max_iters, opts);
    emit(frame_to_json(SicFrame::from_fiducial(r.fiducial)));
    return kExitOk;
  } catch (const NoSicFound& e) {
    err_ << "find-sic: " << e.what() << "\n";
    emit(frame_to_json(SicFrame::from_fiducial(e.best().fiducial)));
    return kExitCheckFailed;
  }
}

int Session::verify_sic_cmd() {
  if (o_.frame.empty()) throw InvalidArgument("verify-sic: --frame is required");
  const SicFrame frame = frame_from_json(read_json_file(o_.frame));
  const SicVerification v = verify_sic(frame);
  const bool pass = v.passes(o_.tol_sic);
  emit({{"dim", frame.dim()},
        {"max_offdiagonal", v.max_offdiagonal},
        {"max_diagonal", v.max_diagonal},
        {"identity_defect", v.identity_defect},
        {"gram_rank", v.gram_rank},
        {"independent", v.independent},
        {"max_deviation", v.max_deviation()},
        {"tolerance", o_.tol_sic},
        {"pass", pass}});
  return pass ? kExitOk : kExitCheckFailed;
}

int Session::to_prob() {
  if (o_.state.empty()) throw InvalidArgument("to-prob: --state is required");
  const DensityOperator rho = state_from_json(read_json_file(o_.state));
  emit(prob_to_json(state_to_prob(rho, frame_for(rho.dim()))));
  return kExitOk;
}

ProbVector single_point(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 1) throw SchemaError("points: expected exactly one probability vector");
    return prob_from_json(j[0], "points[0]");
  }
  return prob_from_json(j, "points");
}

int Session::from_prob() {
  if (o_.points.empty()) throw InvalidArgument("from-prob: --points is required");
  const ProbVector p = single_point(read_json_file(o_.points));
  const SicFrame frame = frame_for(p.dim());
  const HermitianOperator op = prob_to_operator(p, frame);
  const StateValidity valid = is_valid_state(p, frame);
  Json j = matrix_to_json(op.matrix());
  j["valid_state"] = valid.valid;
  j["min_eigenvalue"] = valid.min_eigenvalue;
  emit(j);
  return kExitOk;
}

int Session::cascade() {
  if (o_.state.empty() || o_.ground.empty()) {
    throw InvalidArgument("cascade: --state and --ground are required");
  }
  if (o_.path != "sky" && o_.path != "direct") {
    throw InvalidArgument("cascade: --path must be sky or direct");
  }
  const DensityOperator rho = state_from_json(read_json_file(o_.state));
  const Povm ground = povm_from_json(read_json_file(o_.ground));
  const Context path = o_.path == "sky" ? Context::ViaSky : Context::GroundDirect;
  const CascadeExperiment exp(frame_for(rho.dim()), ground, rho, path);

  const int d = exp.dim();
  const ProbVector p = sky_probabilities(exp);
  const ConditionalMatrix cond = conditional_matrix(exp);
  const std::vector<double> classical = classical_total_probability(p, cond);
  const GroundDistribution quantum = quantum_total_probability(p, cond, d);
  const std::vector<double> born = born_probabilities(rho, ground);

  Json j = {{"dim", d},
            {"path", o_.path},
            {"samples", o_.samples},
            {"seed", o_.seed},
            {"sky", std::vector<double>(p.values().begin(), p.values().end())},
            {"classical", classical},
            {"quantum", quantum.values},
            {"quantum_not_a_probability", quantum.not_a_probability},
            {"born", born}};
  if (o_.samples > 0) {
    const std::vector<double> freq = monte_carlo_cascade(exp, path, o_.samples, o_.seed, o_.threads);
    const std::vector<double>& analytic = path == Context::ViaSky ? classical : born;
    double dev = 0.0;
    for (std::size_t k = 0; k < freq.size(); ++k) dev = std::max(dev, std::abs(freq[k] - analytic[k]));
    j["empirical"] = freq;
    j["max_deviation"] = dev;
  } else {
    j["empirical"] = Json::array();
    j["max_deviation"] = nullptr;
  }
  emit(j);
  return kExitOk;
}

Json violations_json(const std::vector<Violation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    out.push_back({{"first", v.first},
                   {"second", v.second},
                   {"second_is_basis", v.second_is_basis},
                   {"value", v.value}});
  }
  return out;
}

int Session::geometry_audit() {
  if (o_.points.empty()) throw InvalidArgument("geometry-audit: --points is required");
  const std::vector<ProbVector> probs = points_from_json(read_json_file(o_.points));
  const int d = probs.empty() ? o_.dim : probs.front().dim();
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k].dim() != d) {
      throw SchemaError("points[" + std::to_string(k) + "].dim: differs from points[0].dim");
    }
  }
  const std::vector<SimplexPoint> points = to_points(probs);
  const bool any = o_.check_consistency || o_.maximality || o_.zeros || o_.saturating;
  bool failed = false;
  Json j = {{"dim", d}, {"points", points.size()}};

  if (o_.check_consistency || !any) {
    const ConsistencyReport rep = check_consistent(points, d);
    j["consistency"] = {{"consistent", rep.consistent()},
                        {"pair_min", rep.pair_min},
                        {"pair_max", rep.pair_max},
                        {"lower_bound", rep.lower_bound},
                        {"upper_bound", rep.upper_bound},
                        {"violations", violations_json(rep.violations)}};
    failed = failed || !rep.consistent();
  }
  if (o_.maximality) {
    const SicFrame frame = frame_for(d);
    Json list = Json::array();
    for (std::size_t k = 0; k < points.size(); ++k) {
      const MaximalityResult m = maximality_witness(points[k], frame);
      if (const auto* w = std::get_if<MaximalityWitness>(&m)) {
        list.push_back({{"index", k},
                        {"inside_quantum", false},
                        {"min_eigenvalue", w->min_eigenvalue},
                        {"dot", w->dot},
                        {"witness", prob_to_json(w->witness.prob())}});
      } else {
        list.push_back({{"index", k}, {"inside_quantum", true}});
      }
    }
    j["maximality"] = list;
  }
  if (o_.zeros) {
    Json list = Json::array();
    for (std::size_t k = 0; k < points.size(); ++k) {
      const ZeroCount z = zero_count_bound(points[k], d);
      list.push_back({{"index", k}, {"zeros", z.zeros}, {"bound", z.bound}, {"ok", z.ok}});
      failed = failed || !z.ok;
    }
    j["zeros"] = list;
  }
  if (o_.saturating) {
    try {
      const SaturatingFamily s = saturating_family_bound(points, d);
      j["saturating"] = {{"m", s.m},
                         {"ok", s.ok},
                         {"centroid_is_center", s.centroid_is_center},
                         {"g_dot_g", s.g_dot_g},
                         {"predicted", s.predicted}};
      failed = failed || !s.ok;
    } catch (const PreconditionViolated& e) {
      j["saturating"] = {{"precondition_violated", {{"first", e.first()}, {"second", e.second()}}},
                         {"message", e.what()}};
      failed = true;
    }
  }
  emit(j);
  return failed ? kExitCheckFailed : kExitOk;
}

int Session::ks_check() {
  const std::filesystem::path file =
      o_.set.empty() ? data_file("peres33.json") : std::filesystem::path(o_.set);
  const RayBasisSet full = rayset_from_json(read_json_file(file));
  int used = static_cast<int>(full.basis_count());
  if (o_.subset >= 0) {
    if (o_.subset > used) {
      throw InvalidArgument("--subset " + std::to_string(o_.subset) + " exceeds the " +
                            std::to_string(used) + " bases in the set");
    }
    used = o_.subset;
  }
  std::vector<int> which(used);
  for (int k = 0; k < used; ++k) which[k] = k;
  const RayBasisSet set = full.restrict_to_bases(which);

  ColoringOptions opts;
  opts.exclude_orthogonal_pairs = !o_.no_orthogonality;
  const ColoringResult result = find_coloring(set, opts);
  Json j = {{"dim", set.dim()},
            {"rays", set.ray_count()},
            {"bases", set.basis_count()},
            {"exclude_orthogonal_pairs", opts.exclude_orthogonal_pairs}};
  bool ok = true;
  if (const auto* c = std::get_if<Coloring>(&result)) {
    const bool verified = verify_coloring(set, c->assignment, opts);
    j["colorable"] = true;
    j["nodes"] = c->nodes;
    j["assignment"] = c->assignment;
    j["verified"] = verified;
    ok = verified;
  } else {
    j["colorable"] = false;
    j["nodes"] = std::get<Noncolorable>(result).nodes;
  }
  emit(j);
  return ok ? kExitOk : kExitCheckFailed;
}

int Session::epr_demo() {
  const int d = o_.epr_dim;
  if (d < 2) throw InvalidArgument("epr-demo: --dim must be at least 2");
  Rng rng(o_.seed);
  double worst = 0.0;
  int deviating = 0;
  Json example;
  for (int t = 0; t < o_.epr_bases; ++t) {
    const ComplexMatrix basis = random_unitary(d, rng);
    const Eigen::MatrixXd conj = epr_correlation(basis, true);
    const Eigen::MatrixXd plain = epr_correlation(basis, false);
    worst = std::max(worst, (conj - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff());
    if (off_diagonal_mass(plain) > 0.01) ++deviating;
    if (t == 0) {
      auto rows = [](const Eigen::MatrixXd& m) {
        std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
          for (Eigen::Index c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
        }
        return out;
      };
      example = {{"basis", matrix_to_json(basis)},
                 {"conjugated", rows(conj)},
                 {"unconjugated", rows(plain)},
                 {"unconjugated_off_diagonal_mass", off_diagonal_mass(plain)}};
    }
  }
  const double fraction = o_.epr_bases > 0 ? static_cast<double>(deviating) / o_.epr_bases : 0.0;
  const bool pass = worst < 1e-12;
  emit({{"dim", d},
        {"bases", o_.epr_bases},
        {"seed", o_.seed},
        {"max_conjugate_deviation", worst},
        {"unconjugated_fraction_above_0.01", fraction},
        {"example", example},
        {"pass", pass}});
  return pass ? kExitOk : kExitCheckFailed;
}

int Session::report() {
  AcceptanceConfig cfg;
  cfg.seed = o_.seed;
  cfg.threads = o_.threads;
  cfg.restarts = o_.restarts;
  cfg.max_iters = o_.max_iters;
  if (!o_.dims.empty()) cfg.dims = parse_dims(o_.dims);

  const auto results = run_acceptance(cfg, !o_.skip_rerun, [&](const CriterionResult& r) {
    out_ << format_line(r) << std::endl;
  });
  const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  out_ << (all ? "all criteria pass" : "some criteria FAIL") << "\n";

  if (!o_.out.empty()) write_text_file(o_.out, dump_json(report_json(cfg, results)));
  std::string csv = o_.csv;
  if (csv.empty() && !o_.out.empty()) csv = std::filesystem::path(o_.out).replace_extension(".csv").string();
  if (!csv.empty()) write_text_file(csv, report_csv(results));
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"SIC-POVM probability calculus toolkit", "sic-calc"};
  app.require_subcommand(1);

  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "write the JSON artifact here"); };
  auto add_frame = [&](CLI::App* c) {
    c->add_option("--frame", o.frame, "SIC frame file (default: bundled frame for d = 2, 3)");
  };

  auto* find = app.add_subcommand("find-sic", "search for a Weyl-Heisenberg SIC fiducial");
  find->add_option("--dim", o.dim, "dimension")->check(CLI::Range(2, 64));
  find->add_option("--seed", o.seed, "base seed; restart k uses seed + k");
  find->add_option("--restarts", o.restarts)->check(CLI::Range(1, 1 << 20));
  find->add_option("--max-iters", o.max_iters)->check(CLI::Range(1, 1 << 30));
  find->add_option("--threads", o.threads)->check(CLI::Range(1, 1024));
  find->add_option("--tol-sic", o.tol_sic, "required max deviation");
  find->add_flag("--bundled", o.bundled, "write the exact bundled fiducial (d = 2, 3)");
  add_out(find);

  auto* verify = app.add_subcommand("verify-sic", "check tr(P_i P_j) = 1/(d+1) on a frame");
  verify->add_option("--frame", o.frame, "SIC frame file")->required();
  verify->add_option("--tol-sic", o.tol_sic, "pass threshold on the max deviation");
  add_out(verify);

  auto* to = app.add_subcommand("to-prob", "density matrix -> SIC probabilities");
  to->add_option("--state", o.state, "density matrix file")->required();
  add_frame(to);
  add_out(to);

  auto* from = app.add_subcommand("from-prob", "SIC probabilities -> operator");
  from->add_option("--points", o.points, "probability vector file")->required();
  add_frame(from);
  add_out(from);

  auto* cas = app.add_subcommand("cascade", "ground/sky cascade: classical vs quantum totals");
  add_frame(cas);
  cas->add_option("--ground", o.ground, "ground POVM file")->required();
  cas->add_option("--state", o.state, "prior density matrix file")->required();
  cas->add_option("--path", o.path, "sky or direct")->check(CLI::IsMember({"sky", "direct"}));
  cas->add_option("--samples", o.samples, "Monte Carlo samples (0 skips sampling)")
      ->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 40));
  cas->add_option("--seed", o.seed);
  cas->add_option("--threads", o.threads)->check(CLI::Range(1, 1024));
  add_out(cas);

  auto* geo = app.add_subcommand("geometry-audit", "consistency checks on a set of points");
  geo->add_option("--points", o.points, "JSON array of probability vectors")->required();
  add_frame(geo);
  geo->add_option("--dim", o.dim, "dimension when the point list is empty");
  geo->add_flag("--check-consistency", o.check_consistency);
  geo->add_flag("--maximality", o.maximality);
  geo->add_flag("--zeros", o.zeros);
  geo->add_flag("--saturating", o.saturating);
  add_out(geo);

  auto* ks = app.add_subcommand("ks-check", "Kochen-Specker colorability of a ray set");
  ks->add_option("--set", o.set, "ray/basis file (default: bundled Peres set)");
  ks->add_option("--subset", o.subset, "use only the first k bases")->check(CLI::NonNegativeNumber);
  ks->add_flag("--no-orthogonality", o.no_orthogonality,
               "only require one 1 per listed basis");
  add_out(ks);

  auto* epr = app.add_subcommand("epr-demo", "EPR correlations with and without conjugation");
  epr->add_option("--dim", o.epr_dim)->check(CLI::Range(2, 64));
  epr->add_option("--seed", o.seed);
  epr->add_option("--samples", o.epr_bases, "number of random bases")->check(CLI::Range(1, 1 << 24));
  add_out(epr);

  auto* rep = app.add_subcommand("report", "run the acceptance suite");
  rep->add_option("--seed", o.seed);
  rep->add_option("--dims", o.dims, "dimension sweep override, e.g. 2..6 or 2,3");
  rep->add_option("--threads", o.threads)->check(CLI::Range(1, 1024));
  rep->add_option("--restarts", o.restarts)->check(CLI::Range(1, 1 << 20));
  rep->add_option("--out", o.out, "JSON report path");
  rep->add_option("--csv", o.csv, "CSV summary path (default: next to --out)");
  rep->add_flag("--skip-rerun", o.skip_rerun, "omit the determinism rerun");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sic-calc: " << e.what() << "\n";
    return kExitUsage;
  }

  Session s(o, out, err);
  try {
    if (*find) return s.find_sic();
    if (*verify) return s.verify_sic_cmd();
    if (*to) return s.to_prob();
    if (*from) return s.from_prob();
    if (*cas) return s.cascade();
    if (*geo) return s.geometry_audit();
    if (*ks) return s.ks_check();
    if (*epr) return s.epr_demo();
    if (*rep) return s.report();
  } catch (const std::exception& e) {
    err << "sic-calc: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace sic_calc

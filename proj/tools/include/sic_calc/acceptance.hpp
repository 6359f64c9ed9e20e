#pragma once

// The thirteen acceptance checks, shared by `sic-calc report` and the
// acceptance test binary.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "siccalc/io.hpp"
#include "siccalc/sic_engine.hpp"

namespace sic_calc {

using siccalc::Json;

struct AcceptanceConfig {
  std::uint64_t seed = 42;
  /// Overrides every dimension sweep when non-empty.
  std::vector<int> dims;
  int threads = 1;
  int restarts = 16;
  int max_iters = 2000;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string metric;  ///< the headline measured quantity
  double value = 0.0;
  std::string bound;   ///< human-readable threshold, e.g. "< 1e-12"
  Json details;        ///< deterministic: no timings
  double seconds = 0.0;
};

/// Bundled frames for d = 2, 3 and searched frames above, built on first use.
class FrameCache {
 public:
  explicit FrameCache(const AcceptanceConfig& cfg) : cfg_(cfg) {}
  const siccalc::SicFrame& get(int d);
  /// Wall time spent in find_fiducial so far.
  double search_seconds() const { return search_seconds_; }

 private:
  AcceptanceConfig cfg_;
  std::map<int, siccalc::SicFrame> frames_;
  double search_seconds_ = 0.0;
};

/// Runs criteria 1-12 in order; if `with_determinism`, reruns them and adds
/// criterion 13 comparing the two serialized reports.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceConfig& cfg, bool with_determinism = true,
    const std::function<void(const CriterionResult&)>& on_done = {});

Json report_json(const AcceptanceConfig& cfg, const std::vector<CriterionResult>& results);
std::string report_csv(const std::vector<CriterionResult>& results);
/// One line per criterion, with timings.
std::string format_line(const CriterionResult& r);

/// Parses "2..6", "2,3,4" or a mix such as "2,4..6".
std::vector<int> parse_dims(const std::string& spec);

}  // namespace sic_calc

// Runs the thirteen acceptance criteria at full scale, one line each.

#include <iostream>

#include "sic_calc/acceptance.hpp"

int main() {
  sic_calc::AcceptanceConfig cfg;
  int failed = 0;
  const auto results = sic_calc::run_acceptance(cfg, true, [&](const sic_calc::CriterionResult& r) {
    std::cout << sic_calc::format_line(r) << std::endl;
    if (!r.pass) {
      ++failed;
      if (r.details.contains("error")) std::cout << "      error: " << r.details["error"] << "\n";
    }
  });
  std::cout << (failed == 0 ? "all " : "") << results.size() - failed << "/" << results.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sic_calc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `sic-calc` binary. `args` excludes the program name.
/// JSON artifacts go to --out when given, otherwise to `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sic_calc

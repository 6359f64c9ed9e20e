#include <cstdlib>

#include "siccalc/io.hpp"

namespace siccalc {

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("SIC_CALC_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  std::error_code ec;
  if (std::filesystem::is_directory(SICCALC_SOURCE_DATA_DIR, ec)) return SICCALC_SOURCE_DATA_DIR;
  return SICCALC_INSTALLED_DATA_DIR;
}

std::filesystem::path data_file(const std::string& relative) { return data_dir() / relative; }

}  // namespace siccalc

#pragma once

#include <array>
#include <cmath>

#include "siccalc/operator_core.hpp"
#include "siccalc/sic_engine.hpp"

namespace siccalc::testing {

inline const SicFrame& qubit_frame() {
  static const SicFrame f = SicFrame::from_fiducial(bundled_fiducial(2));
  return f;
}

inline const SicFrame& qutrit_frame() {
  static const SicFrame f = SicFrame::from_fiducial(bundled_fiducial(3));
  return f;
}

inline ComplexMatrix pauli(int k) {
  ComplexMatrix m(2, 2);
  const Complex i(0.0, 1.0);
  switch (k) {
    case 0: m << 0.0, 1.0, 1.0, 0.0; break;
    case 1: m << 0.0, -i, i, 0.0; break;
    default: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

/// Bloch vector of a qubit operator, read off with plain matrix traces.
inline std::array<double, 3> bloch(const ComplexMatrix& rho) {
  std::array<double, 3> n{};
  for (int k = 0; k < 3; ++k) n[k] = (rho * pauli(k)).trace().real();
  return n;
}

inline ComplexMatrix from_bloch(const std::array<double, 3>& n) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  for (int k = 0; k < 3; ++k) m += n[k] * pauli(k);
  return 0.5 * m;
}

inline double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace siccalc::testing

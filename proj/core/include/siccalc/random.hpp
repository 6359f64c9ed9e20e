#pragma once

// Seeded random test-vector generators. Every function is deterministic in
// its seed; none keeps state between calls.

#include <cstdint>
#include <random>

#include "siccalc/operator_core.hpp"

namespace siccalc {

using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex Gaussian (real and imaginary parts N(0, 1/2)).
ComplexMatrix ginibre(int rows, int cols, Rng& rng);

/// Haar-random unit vector in C^d.
ComplexVector random_unit_vector(int d, Rng& rng);

/// Haar-random unitary (QR of a Ginibre matrix with the phase of R's diagonal fixed).
ComplexMatrix random_unitary(int d, Rng& rng);
ComplexMatrix random_unitary(int d, std::uint64_t seed);

/// G G^dagger / tr(G G^dagger) for a d x rank Ginibre matrix G.
/// Throws InvalidArgument unless 1 <= rank <= d.
DensityOperator random_density(int d, int rank, Rng& rng);
DensityOperator random_density(int d, int rank, std::uint64_t seed);

/// Random POVM with `outcomes` full-rank elements S^{-1/2} A_j S^{-1/2},
/// A_j Wishart and S = sum_j A_j.
Povm random_povm(int d, int outcomes, Rng& rng);
Povm random_povm(int d, int outcomes, std::uint64_t seed);

/// Random Hermitian matrix with Gaussian entries (GUE-like).
HermitianOperator random_hermitian(int d, Rng& rng);

}  // namespace siccalc

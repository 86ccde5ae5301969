#pragma once
// Seeded random ensembles used by generators, sampled checks and tests.

#include <cstdint>
#include <random>
#include <vector>

#include "covmaps/types.hpp"

namespace covmaps {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
Matrix random_ginibre(int rows, int cols, Rng& rng);
Matrix random_hermitian(int n, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
Matrix random_unitary(int n, Rng& rng);
/// G G^dagger with G n x rank Ginibre.
Matrix random_psd(int n, int rank, Rng& rng);
/// Unit-trace PSD matrix.
Matrix random_density(int n, Rng& rng);
std::vector<Matrix> random_kraus(int n, int count, Rng& rng);

double uniform(Rng& rng, double lo, double hi);
double normal(Rng& rng);

}  // namespace covmaps

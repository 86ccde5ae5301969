#pragma once
// Canonical {E_ij} and Frobenius Hermitian bases of M_n.

#include <utility>
#include <vector>

#include "covmaps/types.hpp"

namespace covmaps {

/// Orthonormal Hermitian basis of M_n ordered as: n(n-1)/2 symmetric
/// off-diagonal elements, n(n-1)/2 antisymmetric ones, then n diagonal ones
/// ending with I/sqrt(n). Symmetric and antisymmetric blocks share one
/// lexicographic (mu, nu) pair list, so index k in either block refers to the
/// same pair.
struct FrobeniusBasis {
    int n = 0;
    std::vector<Matrix> matrices;
    std::vector<std::pair<int, int>> pairs;  // zero-based, first < second

    int size() const { return n * n; }
    int pair_count() const { return n * (n - 1) / 2; }
    int symmetric_index(int k) const { return k; }
    int antisymmetric_index(int k) const { return pair_count() + k; }
    int diagonal_index(int j) const { return 2 * pair_count() + j; }

    /// Column i is F_i flattened row-major; this is the unitary taking
    /// Frobenius coefficients to canonical (E_ij, row-major) coefficients.
    Matrix to_canonical() const;
};

FrobeniusBasis build_frobenius_basis(int n);

/// Shared, lazily built basis for dimension n. Thread-safe.
const FrobeniusBasis& frobenius_basis(int n);

/// E_ij with a single 1 at (i, j), ordered row-major (E_11, E_12, ...).
std::vector<Matrix> canonical_basis(int n);

/// Hilbert-Schmidt coefficients v_i = tr(F_i^dagger A).
Vector expand(const Matrix& a, const FrobeniusBasis& basis);
Matrix reconstruct(const Vector& coefficients, const FrobeniusBasis& basis);

}  // namespace covmaps

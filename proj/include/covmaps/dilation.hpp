#pragma once
// Finite-dimensional Stinespring / Stormer dilations phi(a) = V^dagger pi(a) V
// and the covariance intertwiners V U(g) = W(g) V.

#include <cstdint>
#include <functional>
#include <vector>

#include "covmaps/covariance.hpp"
#include "covmaps/linmap.hpp"
#include "covmaps/types.hpp"

namespace covmaps {

enum class DilationKind { homomorphism, antihomomorphism, jordan };

/// Kraus rank below this eigenvalue of c is treated as numerically zero.
inline constexpr double kKrausRankCutoff = 1e-10;

/// One summand acting on C^n (x) C^r. V x = sum_k (Z_k x) (x) e_k and
/// pi(a) = a (x) I_r (homomorphism) or a^T (x) I_r (antihomomorphism).
struct DilationPart {
    DilationKind kind = DilationKind::homomorphism;
    std::vector<Matrix> kraus;  // Z_k
    Matrix v;

    int rank() const { return static_cast<int>(kraus.size()); }
    int k_dim(int n) const { return n * rank(); }
    Matrix represent(const Matrix& a) const;
};

struct Dilation {
    int n = 0;
    int k_dim = 0;
    DilationKind kind = DilationKind::homomorphism;
    Matrix v;                        // k_dim x n
    std::vector<DilationPart> parts; // one for CP / coCP, two for Jordan
    bool truncated = false;          // eigenvalues below the rank cutoff dropped

    Matrix represent(const Matrix& a) const;
    /// V^dagger pi(a) V
    Matrix reconstruct(const Matrix& a) const;
    /// Orthogonal projection of K onto the given summand (P1, P2 for Jordan).
    Matrix projection(std::size_t part) const;
};

Dilation stinespring(const MapMatrix& m, double tol = kEigenTol);
Dilation costinespring(const MapMatrix& m, double tol = kEigenTol);
/// Direct sum of stinespring(m1) and costinespring(m2); zero summands drop out.
Dilation jordan_dilation(const MapMatrix& m1, const MapMatrix& m2, double tol = kEigenTol);

struct KrausCovarianceWitness {
    Matrix n_matrix;              // N with  L X_k U^-1 = sum_m N_km X_m
    double residual = 0.0;        // sqrt of the least-squares objective
    double unitarity_residual = 0.0;
    bool rank_deficient = false;  // N only determined on the Kraus span
};

/// L = U(g) (or conj U(g) when conjugate). Weights are folded into the
/// operators, X_k = sqrt(w_k) G_k; negative weights throw PreconditionFailure.
KrausCovarianceWitness kraus_covariance_witness(const OperatorSum& kraus, const TorusElement& g, bool conjugate,
                                                double tol = kEigenTol);

struct CovarianceIntertwiner {
    std::function<Matrix(const TorusElement&)> w;
    double intertwining_residual = 0.0;    // max ||V U(g) - W(g) V||
    double representation_residual = 0.0;  // max ||pi(U a U^-1) - W pi(a) W^-1||
    double unitarity_residual = 0.0;       // max ||W W^dagger - I||
    bool truncated = false;
};

inline constexpr double kIntertwinerTol = 1e-9;

/// Builds W(g) = (+)_parts Q(g) (x) M(g) where Q is U (homomorphism) or
/// conj U (antihomomorphism) and M solves the Kraus mixing least-squares
/// problem. Throws NoIntertwinerFound when any residual exceeds tol.
CovarianceIntertwiner covariance_intertwiner(const Dilation& d, int samples = 30, double tol = kIntertwinerTol,
                                             std::uint64_t seed = 0x5eed);

}  // namespace covmaps

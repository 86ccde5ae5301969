#pragma once
// Covariance with respect to the torus of diagonal unitaries
//   U(g) = diag(e^{i x_1}, ..., e^{i x_n}).
//
// A map is covariant when phi(U A U^-1) = U phi(A) U^-1 for every g, and
// conjugate covariant when phi(U A U^-1) = conj(U) phi(A) conj(U)^-1. In the
// Frobenius basis both conditions become commutation of the coefficient
// matrix with a unitary frame: alpha(g) for covariance, beta(g) for
// conjugate covariance.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "covmaps/basis.hpp"
#include "covmaps/linmap.hpp"
#include "covmaps/random.hpp"
#include "covmaps/types.hpp"

namespace covmaps {

/// Point of the n-torus, angles reduced to [0, 2pi).
class TorusElement {
public:
    explicit TorusElement(std::vector<double> angles);

    static TorusElement identity(int n);
    static TorusElement random(int n, Rng& rng);

    int n() const { return static_cast<int>(x_.size()); }
    const std::vector<double>& angles() const { return x_; }
    double operator[](int j) const { return x_[static_cast<std::size_t>(j)]; }

    /// Group product (componentwise phase multiplication).
    TorusElement operator*(const TorusElement& other) const;
    TorusElement inverse() const;

private:
    std::vector<double> x_;
};

Matrix diag_unitary(const TorusElement& g);
Matrix conj_diag_unitary(const TorusElement& g);

// --- frames ---------------------------------------------------------------

/// alpha_ij = tr(F_i^dagger U^-1 F_j U), evaluated by explicit products.
Matrix alpha_inner_product(const TorusElement& g, const FrobeniusBasis& basis);
/// Rotation block form [[cos D, -sin D, 0], [sin D, cos D, 0], [0, 0, I_n]]
/// with D = diag(x_mu(k) - x_nu(k)).
Matrix alpha_closed_form(const TorusElement& g, const FrobeniusBasis& basis);
/// Both routes, cross-checked; throws InternalConsistency if they differ.
Matrix build_alpha(const TorusElement& g, const FrobeniusBasis& basis);

/// beta_ij = tr(F_i^dagger U F_j U).
Matrix beta_inner_product(const TorusElement& g, const FrobeniusBasis& basis);
/// diag(e^{i Theta}, e^{i Theta}, R(g)) with Theta = diag(x_mu(k) + x_nu(k)).
Matrix beta_closed_form(const TorusElement& g, const FrobeniusBasis& basis);
Matrix build_beta(const TorusElement& g, const FrobeniusBasis& basis);
/// Diagonal-block R(g)_ij = tr(F^d_i U F^d_j U); symmetric and unitary.
Matrix beta_diagonal_block(const TorusElement& g, const FrobeniusBasis& basis);

/// Anti-Hermitian logarithm [[0, -D, 0], [D, 0, 0], [0, 0, 0]] of alpha(g).
Matrix alpha_log(const TorusElement& g, const FrobeniusBasis& basis);

// --- congruence-free spectra --------------------------------------------

/// True iff no two points of the set differ by a nonzero integer multiple of
/// z (up to tol). Throws InputError for z == 0.
bool congruence_free_check(std::span<const Complex> spectrum, Complex z, double tol = kEigenTol);

/// |z| / diameter(set): every scaling t*set with 0 < t < tau is
/// z-congruence free. Infinity for a single point. Throws on an empty set.
double congruence_free_scale(std::span<const Complex> set, Complex z);

enum class ExpCommutation { both_commute, neither, violation };

struct ExpCommutationResult {
    ExpCommutation verdict = ExpCommutation::neither;
    double exp_commutator = 0.0;  // max |[e^A, B]|
    double commutator = 0.0;      // max |[A, B]|
};

/// Compares [e^A, B] = 0 against [A, B] = 0. With check_precondition the
/// spectrum of A must be 2 pi i-congruence free (else CongruenceViolation).
ExpCommutationResult exp_commutation_equiv(const Matrix& a, const Matrix& b, double tol = kStructuralTol,
                                           bool check_precondition = true);

// --- covariance tests -----------------------------------------------------

struct CovarianceReport {
    bool covariant = false;
    double identity_residual = 0.0;     // max ||phi(U A U^-1) - V phi(A) V^-1||
    double commutation_residual = 0.0;  // max ||[c, frame(g)]||
    bool identity_holds = false;
    bool commutation_holds = false;
};

/// Sampled check over `samples` random (g, A) pairs plus fixed points with all
/// angles distinct. A is drawn with unit Frobenius norm.
CovarianceReport covariance_report(const MapMatrix& m, int samples = 30, double tol = kStructuralTol,
                                   std::uint64_t seed = 0x5eed);
bool is_covariant(const MapMatrix& m, int samples = 30, double tol = kStructuralTol, std::uint64_t seed = 0x5eed);

CovarianceReport conjugate_covariance_report(const MapMatrix& m, int samples = 30, double tol = kStructuralTol,
                                             std::uint64_t seed = 0x5eed);
bool is_conjugate_covariant(const MapMatrix& m, int samples = 30, double tol = kStructuralTol,
                            std::uint64_t seed = 0x5eed);

/// (U, V)-covariance for arbitrary user-supplied unitary families, sampled
/// pairwise: residual of phi o Ad_U = Ad_V o phi and of [c, alpha_{U,V}].
/// No block classification is attempted for general families.
CovarianceReport sampled_covariance(const MapMatrix& m, std::span<const Matrix> u_family,
                                    std::span<const Matrix> v_family, double tol = kStructuralTol,
                                    std::uint64_t seed = 0x5eed);

// --- projection onto covariant maps ---------------------------------------

enum class ProjectionMode { quadrature, closed_form };

inline constexpr int kQuadratureNodes = 8;
inline constexpr int kQuadratureMaxDim = 5;

/// Haar average of Ad_U o phi o Ad_U^-1 over the torus. quadrature uses the
/// 8-node product rule (exact for this integrand), closed_form masks the
/// Frobenius coefficient matrix onto the commutant of alpha.
MapMatrix project_covariant(const MapMatrix& m, ProjectionMode mode);

// --- block structure ------------------------------------------------------

/// c = [[C1, -C2, 0], [C2, C1, 0], [0, 0, C3]] with C1, C2 diagonal.
struct CovariantBlocks {
    Vector c1;
    Vector c2;
    Matrix c3;

    int n() const { return static_cast<int>(c3.rows()); }
    Matrix assemble() const;
    MapMatrix to_map() const;
};

struct BlockClassification {
    std::optional<CovariantBlocks> blocks;
    double residual = 0.0;  // Frobenius norm of the off-pattern part
};

BlockClassification classify_covariant_blocks(const MapMatrix& m, double tol = kStructuralTol);

/// C1 >= |C2| entrywise and C3 >= 0. Throws PreconditionFailure unless C1 is
/// real, C2 imaginary and C3 Hermitian (a Hermiticity-preserving map).
bool cp_covariant_test(const CovariantBlocks& blocks, double tol = kEigenTol);
/// Eigenvalues s_k -/+ t_k of the rotation corner for C1 = s, C2 = i t.
RealVector covariant_corner_spectrum(const CovariantBlocks& blocks);

/// c = [[C11, C12, 0], [C21, C22, 0], [0, 0, C33(a)]] with diagonal C_ij.
struct ConjugateCovariantBlocks {
    Vector c11;
    Vector c12;
    Vector c21;
    Vector c22;
    Vector a;

    int n() const { return static_cast<int>(a.size()); }
    Matrix assemble() const;
    MapMatrix to_map() const;
};

struct ConjugateBlockClassification {
    std::optional<ConjugateCovariantBlocks> blocks;
    double residual = 0.0;
};

ConjugateBlockClassification classify_conjugate_blocks(const MapMatrix& m, double tol = kStructuralTol);

/// CP test for a conjugate-covariant coefficient matrix: C11, C22 >= 0,
/// C12 = C21^dagger, |C12|^2 <= C11 C22 entrywise, a >= 0.
bool cocp_conjugate_test(const ConjugateCovariantBlocks& blocks, double tol = kEigenTol);
/// Lower eigenvalues (s + r - sqrt((s - r)^2 + 4|w|^2)) / 2 of each 2x2 corner.
RealVector conjugate_corner_min_eigenvalues(const ConjugateCovariantBlocks& blocks);

/// Symmetric C33 = sum_i a_i r_i r_i^T from the closed-form kappa entries.
Matrix build_c33(const Vector& a);
/// Eigenvectors r_i = ((F^d_1)_ii, ..., (F^d_n)_ii) of R(g).
std::vector<RealVector> diagonal_eigenvectors(int n);

// --- random covariant maps ------------------------------------------------

enum class CovariantKind { cp, cocp, decomposable };

struct RandomCovariantMap {
    CovariantKind kind;
    MapMatrix map;
    MapMatrix cp_part;    // zero map for kind == cocp
    MapMatrix cocp_part;  // zero map for kind == cp
};

RandomCovariantMap random_covariant_map(CovariantKind kind, int n, std::uint64_t seed);

CovariantBlocks random_cp_blocks(int n, Rng& rng);
ConjugateCovariantBlocks random_conjugate_cp_blocks(int n, Rng& rng);

}  // namespace covmaps

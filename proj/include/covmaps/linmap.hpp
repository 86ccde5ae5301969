#pragma once
// Linear maps on M_n represented by their n^2 x n^2 coefficient matrix c:
//   phi(A) = sum_ij c_ij B_i A B_j^dagger
// where {B_i} is either the Frobenius basis or the canonical basis.

#include <span>
#include <vector>

#include "covmaps/basis.hpp"
#include "covmaps/types.hpp"

namespace covmaps {

enum class BasisTag { frobenius, canonical };

class MapMatrix {
public:
    MapMatrix(int n, BasisTag tag, Matrix coefficients);

    static MapMatrix identity(int n);
    static MapMatrix zero(int n);
    static MapMatrix transpose_map(int n);

    int n() const { return n_; }
    BasisTag tag() const { return tag_; }
    const Matrix& coefficients() const { return c_; }

    /// Same map, coefficients re-expressed in the requested basis.
    MapMatrix in_basis(BasisTag tag) const;
    /// Frobenius-basis coefficients regardless of the stored tag.
    Matrix frobenius_coefficients() const;

    MapMatrix operator+(const MapMatrix& other) const;
    MapMatrix operator-(const MapMatrix& other) const;
    MapMatrix operator*(Complex s) const;

private:
    int n_;
    BasisTag tag_;
    Matrix c_;
};

/// Signed spectral form of a Hermitian coefficient matrix:
/// phi(A) = sum_k w_k G_k A G_k^dagger with tr(G_j^dagger G_k) = delta_jk.
struct OperatorSum {
    std::vector<double> weights;
    std::vector<Matrix> operators;

    Matrix apply(const Matrix& a) const;
};

/// Map of the canonical-basis covariant normal form
///   A -> sum_{i!=j} a_ij E_ij A E_ji + sum_ij b_ij E_ii A E_jj.
struct CanonicalCovariantForm {
    Matrix a;
    Matrix b;
};

struct PositivityReport {
    bool holds = false;
    double min_eigenvalue = 0.0;
    double hermiticity_residual = 0.0;
};

/// Sum of a CP map and a coCP map, carrying both summands as the certificate.
struct DecomposableMap {
    MapMatrix cp_part;
    MapMatrix cocp_part;
    MapMatrix sum;
};

/// phi(A). A function object rather than a function: Eigen types pull std into
/// argument-dependent lookup, where std::apply would otherwise compete.
struct ApplyMap {
    Matrix operator()(const MapMatrix& m, const Matrix& a) const;
};
inline constexpr ApplyMap apply{};

/// Superoperator S with vec(phi(A)) = S vec(A), vec stacking columns.
Matrix to_superoperator(const MapMatrix& m);
MapMatrix from_superoperator(const Matrix& s, int n, BasisTag tag = BasisTag::frobenius);

/// A -> sum_k K_k A K_k^dagger
MapMatrix from_kraus(std::span<const Matrix> kraus);
/// A -> W A W^dagger
MapMatrix ad_map(const Matrix& w);

/// tau o phi, tau the transpose in the computational basis.
MapMatrix compose_transpose(const MapMatrix& m);
/// phi* with tr(A^dagger phi(B)) = tr(phi*(A)^dagger B).
MapMatrix dual_map(const MapMatrix& m);

bool is_hermiticity_preserving(const MapMatrix& m, double tol = kEigenTol);
PositivityReport cp_report(const MapMatrix& m, double tol = kEigenTol);
PositivityReport cocp_report(const MapMatrix& m, double tol = kEigenTol);
bool is_cp(const MapMatrix& m, double tol = kEigenTol);
bool is_cocp(const MapMatrix& m, double tol = kEigenTol);

/// Throws CertificateViolation unless m1 is CP and m2 is coCP.
DecomposableMap decomposable_certificate(const MapMatrix& m1, const MapMatrix& m2,
                                         double tol = kEigenTol);

/// Eigendecomposition of the Hermitian coefficient matrix, weights sorted
/// descending. Throws PreconditionFailure if c is not Hermitian.
OperatorSum to_operator_sum(const MapMatrix& m, double tol = kEigenTol);

MapMatrix from_canonical_covariant(const CanonicalCovariantForm& form);

}  // namespace covmaps

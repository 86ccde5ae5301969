#include "covmaps/linmap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace covmaps {

namespace {

void require_same_shape(const MapMatrix& a, const MapMatrix& b, const char* what) {
    if (a.n() != b.n()) throw DimensionMismatch(std::string(what) + ": maps act on different dimensions");
}

void require_square(const Matrix& a, int n, const char* what) {
    if (a.rows() != n || a.cols() != n)
        throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(n) + "x" +
                                std::to_string(n) + " matrix, got " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()));
}

}  // namespace

MapMatrix::MapMatrix(int n, BasisTag tag, Matrix coefficients) : n_(n), tag_(tag), c_(std::move(coefficients)) {
    require_dimension(n);
    if (c_.rows() != n * n || c_.cols() != n * n)
        throw DimensionMismatch("MapMatrix: coefficient matrix must be " + std::to_string(n * n) + "x" +
                                std::to_string(n * n));
}

MapMatrix MapMatrix::identity(int n) {
    Matrix c = Matrix::Zero(n * n, n * n);
    c(n * n - 1, n * n - 1) = static_cast<double>(n);
    return {n, BasisTag::frobenius, std::move(c)};
}

MapMatrix MapMatrix::zero(int n) { return {n, BasisTag::frobenius, Matrix::Zero(n * n, n * n)}; }

MapMatrix MapMatrix::transpose_map(int n) {
    // F_i^T = F_i except on the antisymmetric block, where F_i^T = -F_i.
    const int p = n * (n - 1) / 2;
    Matrix c = Matrix::Identity(n * n, n * n);
    for (int k = 0; k < p; ++k) c(p + k, p + k) = -1.0;
    return {n, BasisTag::frobenius, std::move(c)};
}

MapMatrix MapMatrix::in_basis(BasisTag tag) const {
    if (tag == tag_) return *this;
    const Matrix w = frobenius_basis(n_).to_canonical();
    if (tag == BasisTag::canonical) return {n_, tag, w * c_ * w.adjoint()};
    return {n_, tag, w.adjoint() * c_ * w};
}

Matrix MapMatrix::frobenius_coefficients() const {
    if (tag_ == BasisTag::frobenius) return c_;
    return in_basis(BasisTag::frobenius).coefficients();
}

MapMatrix MapMatrix::operator+(const MapMatrix& other) const {
    require_same_shape(*this, other, "map sum");
    return {n_, tag_, c_ + other.in_basis(tag_).coefficients()};
}

MapMatrix MapMatrix::operator-(const MapMatrix& other) const {
    require_same_shape(*this, other, "map difference");
    return {n_, tag_, c_ - other.in_basis(tag_).coefficients()};
}

MapMatrix MapMatrix::operator*(Complex s) const { return {n_, tag_, c_ * s}; }

Matrix OperatorSum::apply(const Matrix& a) const {
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    for (std::size_t k = 0; k < operators.size(); ++k)
        out += weights[k] * operators[k] * a * operators[k].adjoint();
    return out;
}

Matrix to_superoperator(const MapMatrix& m) {
    const int n = m.n();
    const Matrix c = m.in_basis(BasisTag::canonical).coefficients();
    Matrix s(n * n, n * n);
    // S[(p,q),(r,s)] = c_can[(q,s),(p,r)]: the reshuffle between the
    // canonical-basis coefficients and the column-stacking superoperator.
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int t = 0; t < n; ++t) s(p * n + q, r * n + t) = c(q * n + t, p * n + r);
    return s;
}

MapMatrix from_superoperator(const Matrix& s, int n, BasisTag tag) {
    require_dimension(n);
    if (s.rows() != n * n || s.cols() != n * n)
        throw DimensionMismatch("from_superoperator: expected " + std::to_string(n * n) + "x" +
                                std::to_string(n * n) + " superoperator");
    Matrix c(n * n, n * n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int t = 0; t < n; ++t) c(q * n + t, p * n + r) = s(p * n + q, r * n + t);
    return MapMatrix(n, BasisTag::canonical, std::move(c)).in_basis(tag);
}

Matrix ApplyMap::operator()(const MapMatrix& m, const Matrix& a) const {
    const int n = m.n();
    require_square(a, n, "apply");
    const Matrix s = to_superoperator(m);
    const Vector v = Eigen::Map<const Vector>(a.data(), n * n);
    const Vector out = s * v;
    return Eigen::Map<const Matrix>(out.data(), n, n);
}

MapMatrix from_kraus(std::span<const Matrix> kraus) {
    if (kraus.empty()) throw InputError("from_kraus: empty Kraus family");
    const int n = static_cast<int>(kraus.front().rows());
    const FrobeniusBasis& basis = frobenius_basis(n);
    Matrix c = Matrix::Zero(n * n, n * n);
    for (const Matrix& k : kraus) {
        require_square(k, n, "from_kraus");
        const Vector v = expand(k, basis);
        c += v * v.adjoint();
    }
    return {n, BasisTag::frobenius, std::move(c)};
}

MapMatrix ad_map(const Matrix& w) {
    const Matrix ops[] = {w};
    return from_kraus(ops);
}

MapMatrix compose_transpose(const MapMatrix& m) {
    const int n = m.n();
    const Matrix s = to_superoperator(m);
    Matrix out(n * n, n * n);
    // vec(A^T)[i + j n] = vec(A)[j + i n]
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.row(i + j * n) = s.row(j + i * n);
    return from_superoperator(out, n, m.tag());
}

MapMatrix dual_map(const MapMatrix& m) {
    return from_superoperator(to_superoperator(m).adjoint(), m.n(), m.tag());
}

bool is_hermiticity_preserving(const MapMatrix& m, double tol) {
    const Matrix c = m.frobenius_coefficients();
    return max_abs(c - c.adjoint()) <= tol;
}

PositivityReport cp_report(const MapMatrix& m, double tol) {
    const Matrix c = m.frobenius_coefficients();
    PositivityReport r;
    r.hermiticity_residual = max_abs(c - c.adjoint());
    const Matrix h = 0.5 * (c + c.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = eig.eigenvalues().minCoeff();
    r.holds = r.hermiticity_residual <= tol && r.min_eigenvalue >= -tol;
    return r;
}

PositivityReport cocp_report(const MapMatrix& m, double tol) { return cp_report(compose_transpose(m), tol); }

bool is_cp(const MapMatrix& m, double tol) { return cp_report(m, tol).holds; }

bool is_cocp(const MapMatrix& m, double tol) { return cocp_report(m, tol).holds; }

DecomposableMap decomposable_certificate(const MapMatrix& m1, const MapMatrix& m2, double tol) {
    require_same_shape(m1, m2, "decomposable_certificate");
    const PositivityReport cp = cp_report(m1, tol);
    if (!cp.holds)
        throw CertificateViolation("decomposable_certificate: first summand is not CP (min eigenvalue " +
                                   std::to_string(cp.min_eigenvalue) + ", hermiticity residual " +
                                   std::to_string(cp.hermiticity_residual) + ")");
    const PositivityReport cocp = cocp_report(m2, tol);
    if (!cocp.holds)
        throw CertificateViolation("decomposable_certificate: second summand is not coCP (min eigenvalue " +
                                   std::to_string(cocp.min_eigenvalue) + ", hermiticity residual " +
                                   std::to_string(cocp.hermiticity_residual) + ")");
    return {m1, m2, m1.in_basis(BasisTag::frobenius) + m2};
}

OperatorSum to_operator_sum(const MapMatrix& m, double tol) {
    const Matrix c = m.frobenius_coefficients();
    if (max_abs(c - c.adjoint()) > tol)
        throw PreconditionFailure("to_operator_sum: coefficient matrix is not Hermitian");
    const Matrix h = 0.5 * (c + c.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    const FrobeniusBasis& basis = frobenius_basis(m.n());
    const int dim = basis.size();

    std::vector<int> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return eig.eigenvalues()(a) > eig.eigenvalues()(b); });

    OperatorSum out;
    for (int idx : order) {
        out.weights.push_back(eig.eigenvalues()(idx));
        out.operators.push_back(reconstruct(eig.eigenvectors().col(idx), basis));
    }
    return out;
}

MapMatrix from_canonical_covariant(const CanonicalCovariantForm& form) {
    const int n = static_cast<int>(form.a.rows());
    require_dimension(n);
    require_square(form.a, n, "from_canonical_covariant (a)");
    require_square(form.b, n, "from_canonical_covariant (b)");
    Matrix c = Matrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // E_ij A E_ij^dagger carries a_ij, E_ii A E_jj^dagger carries b_ij.
            if (i != j) c(i * n + j, i * n + j) += form.a(i, j);
            c(i * n + i, j * n + j) += form.b(i, j);
        }
    return MapMatrix(n, BasisTag::canonical, std::move(c)).in_basis(BasisTag::frobenius);
}

}  // namespace covmaps

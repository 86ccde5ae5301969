#include "covmaps/basis.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace covmaps {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

FrobeniusBasis build_frobenius_basis(int n) {
    require_dimension(n);
    FrobeniusBasis basis;
    basis.n = n;
    for (int mu = 0; mu < n; ++mu)
        for (int nu = mu + 1; nu < n; ++nu) basis.pairs.emplace_back(mu, nu);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    basis.matrices.reserve(static_cast<std::size_t>(n * n));
    for (const auto& [mu, nu] : basis.pairs) {
        Matrix f = Matrix::Zero(n, n);
        f(mu, nu) = inv_sqrt2;
        f(nu, mu) = inv_sqrt2;
        basis.matrices.push_back(std::move(f));
    }
    for (const auto& [mu, nu] : basis.pairs) {
        // -i/sqrt2 (E_mu,nu - E_nu,mu)
        Matrix f = Matrix::Zero(n, n);
        f(mu, nu) = Complex(0.0, -inv_sqrt2);
        f(nu, mu) = Complex(0.0, inv_sqrt2);
        basis.matrices.push_back(std::move(f));
    }
    for (int k = 1; k < n; ++k) {
        // K_k = (E_11 + ... + E_kk - k E_{k+1,k+1}) / sqrt(k(k+1))
        const double scale = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
        Matrix f = Matrix::Zero(n, n);
        for (int j = 0; j < k; ++j) f(j, j) = scale;
        f(k, k) = -static_cast<double>(k) * scale;
        basis.matrices.push_back(std::move(f));
    }
    basis.matrices.push_back(Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));
    return basis;
}

Matrix FrobeniusBasis::to_canonical() const {
    Matrix w(n * n, n * n);
    for (int i = 0; i < n * n; ++i) {
        const Matrix& f = matrices[static_cast<std::size_t>(i)];
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) w(r * n + c, i) = f(r, c);
    }
    return w;
}

const FrobeniusBasis& frobenius_basis(int n) {
    require_dimension(n);
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<FrobeniusBasis>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<FrobeniusBasis>(build_frobenius_basis(n));
    return *slot;
}

std::vector<Matrix> canonical_basis(int n) {
    require_dimension(n);
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Matrix e = Matrix::Zero(n, n);
            e(i, j) = 1.0;
            out.push_back(std::move(e));
        }
    return out;
}

Vector expand(const Matrix& a, const FrobeniusBasis& basis) {
    if (a.rows() != basis.n || a.cols() != basis.n)
        throw DimensionMismatch("expand: matrix is " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ", basis has n=" + std::to_string(basis.n));
    Vector v(basis.size());
    for (int i = 0; i < basis.size(); ++i)
        v(i) = (basis.matrices[static_cast<std::size_t>(i)].adjoint() * a).trace();
    return v;
}

Matrix reconstruct(const Vector& coefficients, const FrobeniusBasis& basis) {
    if (coefficients.size() != basis.size())
        throw DimensionMismatch("reconstruct: expected " + std::to_string(basis.size()) + " coefficients");
    Matrix a = Matrix::Zero(basis.n, basis.n);
    for (int i = 0; i < basis.size(); ++i) a += coefficients(i) * basis.matrices[static_cast<std::size_t>(i)];
    return a;
}

}  // namespace covmaps

#include <doctest.h>

#include <cmath>

#include "covmaps/basis.hpp"
#include "covmaps/random.hpp"

using namespace covmaps;

namespace {

Matrix m2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST_CASE("n = 2 basis is the normalized Pauli basis") {
    // Oracle: sigma_x, sigma_y, sigma_z, I each divided by sqrt 2, in that order.
    const double s = 1.0 / std::sqrt(2.0);
    const FrobeniusBasis b = build_frobenius_basis(2);
    REQUIRE(b.size() == 4);
    CHECK(max_abs(b.matrices[0] - s * m2(0, 1, 1, 0)) < 1e-15);
    CHECK(max_abs(b.matrices[1] - s * m2(0, -kI, kI, 0)) < 1e-15);
    CHECK(max_abs(b.matrices[2] - s * m2(1, 0, 0, -1)) < 1e-15);
    CHECK(max_abs(b.matrices[3] - s * m2(1, 0, 0, 1)) < 1e-15);
}

TEST_CASE("orthonormal, Hermitian, traceless except the last element") {
    for (int n = 2; n <= 8; ++n) {
        const FrobeniusBasis b = build_frobenius_basis(n);
        REQUIRE(static_cast<int>(b.matrices.size()) == n * n);
        for (int i = 0; i < n * n; ++i) {
            const Matrix& fi = b.matrices[static_cast<std::size_t>(i)];
            CHECK(max_abs(fi - fi.adjoint()) == 0.0);
            if (i + 1 < n * n) CHECK(std::abs(fi.trace()) < 1e-14);
            for (int j = 0; j < n * n; ++j) {
                const Complex g = (fi.adjoint() * b.matrices[static_cast<std::size_t>(j)]).trace();
                CHECK(std::abs(g - Complex(i == j ? 1.0 : 0.0)) < 1e-12);
            }
        }
        CHECK(max_abs(b.matrices.back() - Matrix::Identity(n, n) / std::sqrt(double(n))) < 1e-15);
    }
}

TEST_CASE("symmetric and antisymmetric blocks share a lexicographic pair list") {
    const FrobeniusBasis b = build_frobenius_basis(4);
    REQUIRE(b.pair_count() == 6);
    const std::vector<std::pair<int, int>> expect{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    CHECK(b.pairs == expect);
    const double s = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < b.pair_count(); ++k) {
        const auto [mu, nu] = b.pairs[static_cast<std::size_t>(k)];
        const Matrix& sym = b.matrices[static_cast<std::size_t>(b.symmetric_index(k))];
        const Matrix& anti = b.matrices[static_cast<std::size_t>(b.antisymmetric_index(k))];
        CHECK(std::abs(sym(mu, nu) - s) < 1e-15);
        CHECK(std::abs(sym(nu, mu) - s) < 1e-15);
        CHECK(std::abs(anti(mu, nu) - Complex(0, -s)) < 1e-15);
        CHECK(std::abs(anti(nu, mu) - Complex(0, s)) < 1e-15);
    }
}

TEST_CASE("diagonal elements follow the K_k recursion") {
    const int n = 5;
    const FrobeniusBasis b = build_frobenius_basis(n);
    for (int k = 1; k < n; ++k) {
        // Oracle: (sum_{j<k} E_jj - k E_kk) / sqrt(k (k + 1)), zero-based.
        Matrix expect = Matrix::Zero(n, n);
        for (int j = 0; j < k; ++j) expect(j, j) = 1.0;
        expect(k, k) = -double(k);
        expect /= std::sqrt(double(k * (k + 1)));
        CHECK(max_abs(b.matrices[static_cast<std::size_t>(b.diagonal_index(k - 1))] - expect) < 1e-15);
    }
}

TEST_CASE("expand and reconstruct are inverse") {
    Rng rng(21);
    for (int n = 2; n <= 6; ++n) {
        const FrobeniusBasis& b = frobenius_basis(n);
        for (int t = 0; t < 20; ++t) {
            const Matrix a = random_ginibre(n, n, rng);
            const Vector v = expand(a, b);
            CHECK(max_abs(reconstruct(v, b) - a) < 1e-13);
            CHECK(std::abs(v.norm() - a.norm()) < 1e-12);  // Parseval
        }
        const Vector id = expand(Matrix::Identity(n, n), b);
        CHECK(std::abs(id(n * n - 1) - std::sqrt(double(n))) < 1e-14);
        CHECK(id.head(n * n - 1).norm() < 1e-14);
    }
}

TEST_CASE("Hermitian matrices have real coefficients") {
    Rng rng(22);
    const Matrix h = random_hermitian(4, rng);
    const Vector v = expand(h, frobenius_basis(4));
    CHECK(v.imag().norm() < 1e-14);
}

TEST_CASE("to_canonical is unitary with row-major flattened columns") {
    const FrobeniusBasis& b = frobenius_basis(3);
    const Matrix w = b.to_canonical();
    CHECK(max_abs(w * w.adjoint() - Matrix::Identity(9, 9)) < 1e-14);
    for (int i = 0; i < 9; ++i)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) CHECK(w(r * 3 + c, i) == b.matrices[static_cast<std::size_t>(i)](r, c));
}

TEST_CASE("canonical basis is row-major") {
    const std::vector<Matrix> e = canonical_basis(3);
    REQUIRE(e.size() == 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Matrix& m = e[static_cast<std::size_t>(i * 3 + j)];
            CHECK(m(i, j) == Complex(1.0));
            CHECK(m.cwiseAbs().sum() == 1.0);
        }
}

TEST_CASE("errors and caching") {
    CHECK_THROWS_AS(build_frobenius_basis(1), InvalidDimension);
    CHECK_THROWS_AS(frobenius_basis(0), InvalidDimension);
    CHECK_THROWS_AS(expand(Matrix::Identity(3, 3), frobenius_basis(2)), DimensionMismatch);
    CHECK(&frobenius_basis(4) == &frobenius_basis(4));
}

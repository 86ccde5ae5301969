#include <doctest.h>

#include <cmath>

#include "covmaps/linmap.hpp"
#include "covmaps/random.hpp"

using namespace covmaps;

namespace {

// Oracle: phi(A) = sum_ij c_ij B_i A B_j^dagger evaluated term by term.
Matrix apply_by_definition(const Matrix& c, const std::vector<Matrix>& basis, const Matrix& a) {
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            out += c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * basis[i] * a * basis[j].adjoint();
    return out;
}

Matrix pauli(int k) {
    Matrix p = Matrix::Zero(2, 2);
    switch (k) {
        case 0: p << 0, 1, 1, 0; break;
        case 1: p << 0, -kI, kI, 0; break;
        case 2: p << 1, 0, 0, -1; break;
        default: p.setIdentity();
    }
    return p;
}

MapMatrix random_cp(int n, int rank, Rng& rng) {
    const std::vector<Matrix> k = random_kraus(n, rank, rng);
    return from_kraus(k);
}

}  // namespace

TEST_CASE("apply agrees with the defining double sum in both bases") {
    Rng rng(31);
    for (int n : {2, 3}) {
        const Matrix c = random_ginibre(n * n, n * n, rng);
        const Matrix a = random_ginibre(n, n, rng);
        const MapMatrix mf(n, BasisTag::frobenius, c);
        const MapMatrix mc(n, BasisTag::canonical, c);
        CHECK(max_abs(apply(mf, a) - apply_by_definition(c, frobenius_basis(n).matrices, a)) < 1e-12);
        CHECK(max_abs(apply(mc, a) - apply_by_definition(c, canonical_basis(n), a)) < 1e-12);
        // Re-expressing the coefficients does not change the map.
        CHECK(max_abs(apply(mc.in_basis(BasisTag::frobenius), a) - apply(mc, a)) < 1e-12);
        CHECK(max_abs(mf.in_basis(BasisTag::canonical).in_basis(BasisTag::frobenius).coefficients() - c) < 1e-12);
    }
}

TEST_CASE("identity and zero maps") {
    Rng rng(32);
    for (int n : {2, 3, 5}) {
        const MapMatrix id = MapMatrix::identity(n);
        Matrix expect = Matrix::Zero(n * n, n * n);
        expect(n * n - 1, n * n - 1) = double(n);
        CHECK(max_abs(id.coefficients() - expect) == 0.0);
        const Matrix a = random_ginibre(n, n, rng);
        CHECK(max_abs(apply(id, a) - a) < 1e-13);
        CHECK(max_abs(apply(MapMatrix::zero(n), a)) == 0.0);
    }
}

TEST_CASE("transpose map: Pauli oracle and brute-force re-expansion") {
    // n = 2: A^T = (1/2) sum_k eps_k sigma_k A sigma_k with eps = (+1, -1, +1, +1).
    Rng rng(33);
    const Matrix a = random_ginibre(2, 2, rng);
    Matrix oracle = Matrix::Zero(2, 2);
    const double eps[] = {1, -1, 1, 1};
    for (int k = 0; k < 4; ++k) oracle += 0.5 * eps[k] * pauli(k) * a * pauli(k);
    CHECK(max_abs(oracle - a.transpose()) < 1e-14);

    const MapMatrix t2 = MapMatrix::transpose_map(2);
    Matrix diag = Matrix::Zero(4, 4);
    diag.diagonal() << 1, -1, 1, 1;
    CHECK(max_abs(t2.coefficients() - diag) < 1e-15);
    Matrix e12 = Matrix::Zero(2, 2);
    e12(0, 1) = 1.0;
    CHECK(max_abs(apply(t2, e12) - e12.transpose()) < 1e-15);

    for (int n : {3, 4}) {
        const MapMatrix t = MapMatrix::transpose_map(n);
        const int p = n * (n - 1) / 2;
        for (int i = 0; i < n * n; ++i) {
            const double sign = (i >= p && i < 2 * p) ? -1.0 : 1.0;
            CHECK(std::abs(t.coefficients()(i, i) - sign) < 1e-15);
        }
        CHECK(max_abs(t.coefficients() - Matrix(t.coefficients().diagonal().asDiagonal())) < 1e-15);
        const Matrix b = random_ginibre(n, n, rng);
        CHECK(max_abs(apply(t, b) - b.transpose()) < 1e-13);
    }
}

TEST_CASE("superoperator uses column stacking and round-trips") {
    Rng rng(34);
    const int n = 3;
    const MapMatrix m(n, BasisTag::frobenius, random_ginibre(n * n, n * n, rng));
    const Matrix s = to_superoperator(m);
    const Matrix a = random_ginibre(n, n, rng);
    const Matrix out = apply(m, a);
    const Vector lhs = Eigen::Map<const Vector>(out.data(), n * n);
    const Vector rhs = s * Eigen::Map<const Vector>(a.data(), n * n);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(max_abs(from_superoperator(s, n).frobenius_coefficients() - m.frobenius_coefficients()) < 1e-12);
    CHECK(max_abs(from_superoperator(s, n, BasisTag::canonical).in_basis(BasisTag::frobenius).coefficients() -
                  m.frobenius_coefficients()) < 1e-12);
    // vec(W A W^dagger) = (conj W kron W) vec A
    const Matrix w = random_ginibre(n, n, rng);
    CHECK(max_abs(to_superoperator(ad_map(w)) - kron(w.conjugate(), w)) < 1e-12);
}

TEST_CASE("Kraus construction matches direct summation") {
    Rng rng(35);
    const std::vector<Matrix> k = random_kraus(3, 4, rng);
    const MapMatrix m = from_kraus(k);
    const Matrix a = random_ginibre(3, 3, rng);
    Matrix oracle = Matrix::Zero(3, 3);
    for (const Matrix& x : k) oracle += x * a * x.adjoint();
    CHECK(max_abs(apply(m, a) - oracle) < 1e-12);
}

TEST_CASE("compose_transpose") {
    Rng rng(36);
    for (int n : {2, 3}) {
        const MapMatrix m(n, BasisTag::frobenius, random_ginibre(n * n, n * n, rng));
        const Matrix a = random_ginibre(n, n, rng);
        CHECK(max_abs(apply(compose_transpose(m), a) - apply(m, a).transpose()) < 1e-12);
        CHECK(max_abs(compose_transpose(compose_transpose(m)).frobenius_coefficients() - m.frobenius_coefficients()) <
              1e-12);
        CHECK(max_abs(compose_transpose(MapMatrix::identity(n)).frobenius_coefficients() -
                      MapMatrix::transpose_map(n).coefficients()) < 1e-13);
        CHECK(max_abs(compose_transpose(MapMatrix::transpose_map(n)).frobenius_coefficients() -
                      MapMatrix::identity(n).coefficients()) < 1e-13);
    }
}

TEST_CASE("dual map satisfies the trace pairing") {
    Rng rng(37);
    const int n = 3;
    const MapMatrix m(n, BasisTag::canonical, random_ginibre(n * n, n * n, rng));
    const MapMatrix d = dual_map(m);
    const Matrix a = random_ginibre(n, n, rng), b = random_ginibre(n, n, rng);
    const Complex lhs = (a.adjoint() * apply(m, b)).trace();
    const Complex rhs = (apply(d, a).adjoint() * b).trace();
    CHECK(std::abs(lhs - rhs) < 1e-11);
    CHECK(max_abs(dual_map(MapMatrix::identity(n)).frobenius_coefficients() - MapMatrix::identity(n).coefficients()) <
          1e-13);
    // Single operator G: the dual is the single operator G^dagger.
    const Matrix g = random_ginibre(n, n, rng);
    CHECK(max_abs(dual_map(ad_map(g)).frobenius_coefficients() -
                  ad_map(g.adjoint()).frobenius_coefficients()) < 1e-12);
}

TEST_CASE("Hermiticity preservation") {
    Rng rng(38);
    CHECK(is_hermiticity_preserving(MapMatrix::transpose_map(3)));
    CHECK(is_hermiticity_preserving(random_cp(3, 2, rng)));
    Matrix c = Matrix::Zero(4, 4);
    c(0, 1) = 1.0;
    CHECK_FALSE(is_hermiticity_preserving(MapMatrix(2, BasisTag::frobenius, c)));
}

TEST_CASE("CP and coCP tests") {
    Rng rng(39);
    const PositivityReport id = cp_report(MapMatrix::identity(3));
    CHECK(id.holds);
    CHECK(std::abs(id.min_eigenvalue) < 1e-14);
    const PositivityReport t = cp_report(MapMatrix::transpose_map(2));
    CHECK_FALSE(t.holds);
    CHECK(std::abs(t.min_eigenvalue + 1.0) < 1e-14);
    const Matrix w = random_unitary(3, rng);
    CHECK(is_cp(ad_map(w)));
    CHECK(is_cocp(MapMatrix::transpose_map(3)));
    CHECK_FALSE(is_cocp(MapMatrix::identity(2)));
    CHECK(is_cocp(compose_transpose(ad_map(w))));
    CHECK(is_cp(random_cp(4, 3, rng)));
    // Non-Hermitian coefficients can never be CP.
    Matrix c = Matrix::Identity(4, 4);
    c(0, 1) = 0.5;
    CHECK_FALSE(is_cp(MapMatrix(2, BasisTag::frobenius, c)));
}

TEST_CASE("decomposable certificates") {
    Rng rng(40);
    const int n = 3;
    const DecomposableMap d = decomposable_certificate(MapMatrix::identity(n), MapMatrix::transpose_map(n));
    Matrix expect = MapMatrix::transpose_map(n).coefficients();
    expect(n * n - 1, n * n - 1) += double(n);
    CHECK(max_abs(d.sum.frobenius_coefficients() - expect) < 1e-14);

    const DecomposableMap t = decomposable_certificate(MapMatrix::zero(n), MapMatrix::transpose_map(n));
    CHECK(max_abs(t.sum.frobenius_coefficients() - MapMatrix::transpose_map(n).coefficients()) == 0.0);

    const MapMatrix cp = random_cp(n, 2, rng);
    const MapMatrix cocp = compose_transpose(random_cp(n, 3, rng));
    const DecomposableMap r = decomposable_certificate(cp, cocp);
    for (int i = 0; i < 20; ++i) {
        const Matrix a = random_ginibre(n, n, rng);
        CHECK(max_abs(apply(r.sum, a) - apply(cp, a) - apply(cocp, a)) < 1e-10);
    }
    CHECK_THROWS_AS(decomposable_certificate(MapMatrix::transpose_map(n), MapMatrix::zero(n)), CertificateViolation);
    CHECK_THROWS_AS(decomposable_certificate(MapMatrix::zero(n), MapMatrix::identity(n)), CertificateViolation);
}

TEST_CASE("operator-sum form") {
    Rng rng(41);
    const OperatorSum id = to_operator_sum(MapMatrix::identity(3));
    CHECK(std::abs(id.weights[0] - 3.0) < 1e-13);
    for (std::size_t k = 1; k < id.weights.size(); ++k) CHECK(std::abs(id.weights[k]) < 1e-13);
    // G is I / sqrt 3 up to a phase.
    const Matrix g = id.operators[0];
    CHECK(std::abs(std::abs(g(0, 0)) - 1.0 / std::sqrt(3.0)) < 1e-13);
    CHECK(max_abs(g - g(0, 0) * Matrix::Identity(3, 3)) < 1e-13);

    const OperatorSum t = to_operator_sum(MapMatrix::transpose_map(2));
    std::vector<double> w = t.weights;
    CHECK(w == std::vector<double>{1.0, 1.0, 1.0, -1.0});

    const MapMatrix m = random_cp(3, 4, rng);
    const OperatorSum s = to_operator_sum(m);
    for (std::size_t k = 0; k + 1 < s.weights.size(); ++k) CHECK(s.weights[k] >= s.weights[k + 1]);
    CHECK(s.weights.back() >= -1e-10);
    for (std::size_t i = 0; i < s.operators.size(); ++i)
        for (std::size_t j = 0; j < s.operators.size(); ++j)
            CHECK(std::abs((s.operators[i].adjoint() * s.operators[j]).trace() - Complex(i == j ? 1.0 : 0.0)) < 1e-12);
    const Matrix a = random_ginibre(3, 3, rng);
    CHECK(max_abs(s.apply(a) - apply(m, a)) < 1e-12);

    Matrix c = Matrix::Zero(4, 4);
    c(0, 1) = 1.0;
    CHECK_THROWS_AS(to_operator_sum(MapMatrix(2, BasisTag::frobenius, c)), PreconditionFailure);
}

TEST_CASE("canonical covariant normal form") {
    Rng rng(42);
    const int n = 3;
    CanonicalCovariantForm f{random_ginibre(n, n, rng), random_ginibre(n, n, rng)};
    const MapMatrix m = from_canonical_covariant(f);
    const std::vector<Matrix> e = canonical_basis(n);
    auto unit = [&](int i, int j) { return e[static_cast<std::size_t>(i * n + j)]; };
    const Matrix a = random_ginibre(n, n, rng);
    Matrix oracle = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j) oracle += f.a(i, j) * unit(i, j) * a * unit(j, i);
            oracle += f.b(i, j) * unit(i, i) * a * unit(j, j);
        }
    CHECK(max_abs(apply(m, a) - oracle) < 1e-12);

    // a = 0, b = all ones gives the identity map.
    const MapMatrix ones = from_canonical_covariant({Matrix::Zero(n, n), Matrix::Ones(n, n)});
    for (const Matrix& x : e) CHECK(max_abs(apply(ones, x) - x) < 1e-13);

    // a_ij = 1 off the diagonal, b = I: E_ij A E_ji = A_jj E_ii, so the map is
    // A -> tr(A) I. Trace is scaled by n; dividing by n gives the completely
    // depolarizing channel, which is trace preserving.
    Matrix aa = Matrix::Ones(n, n);
    aa.diagonal().setZero();
    const MapMatrix flat = from_canonical_covariant({aa, Matrix::Identity(n, n)});
    const MapMatrix depolarize = from_canonical_covariant({aa / double(n), Matrix::Identity(n, n) / double(n)});
    for (int i = 0; i < 5; ++i) {
        const Matrix x = random_ginibre(n, n, rng);
        CHECK(max_abs(apply(flat, x) - x.trace() * Matrix::Identity(n, n)) < 1e-12);
        CHECK(std::abs(apply(depolarize, x).trace() - x.trace()) < 1e-12);
    }
    CHECK(max_abs(from_canonical_covariant({Matrix::Zero(n, n), Matrix::Zero(n, n)}).coefficients()) == 0.0);
    CHECK_THROWS_AS(from_canonical_covariant({Matrix::Zero(3, 3), Matrix::Zero(2, 2)}), DimensionMismatch);
}

TEST_CASE("arithmetic and errors") {
    Rng rng(43);
    const MapMatrix a(2, BasisTag::canonical, random_ginibre(4, 4, rng));
    const MapMatrix b(2, BasisTag::frobenius, random_ginibre(4, 4, rng));
    const Matrix x = random_ginibre(2, 2, rng);
    CHECK(max_abs(apply(a + b, x) - apply(a, x) - apply(b, x)) < 1e-12);
    CHECK(max_abs(apply(a - b, x) - apply(a, x) + apply(b, x)) < 1e-12);
    CHECK(max_abs(apply(a * Complex(0, 2), x) - Complex(0, 2) * apply(a, x)) < 1e-12);
    CHECK_THROWS_AS(apply(a, Matrix::Identity(3, 3)), DimensionMismatch);
    CHECK_THROWS_AS(MapMatrix(2, BasisTag::frobenius, Matrix::Zero(3, 3)), DimensionMismatch);
    CHECK_THROWS_AS(MapMatrix::identity(1), InvalidDimension);
    CHECK_THROWS_AS(a + MapMatrix::zero(3), DimensionMismatch);
}

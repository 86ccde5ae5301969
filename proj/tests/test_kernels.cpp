#include <doctest.h>

#include <vector>

#include "covmaps/kernels.hpp"
#include "covmaps/random.hpp"

using namespace covmaps;
namespace k = covmaps::kernels;

namespace {

// Restores the dispatch target on scope exit.
struct IsaGuard {
    k::Isa saved = k::active_isa();
    ~IsaGuard() { k::set_isa(saved); }
};

void run_gemm(void (*gemm)(const k::GemmArgs&), const Matrix& a, const Matrix& b, Matrix& c, bool acc) {
    k::GemmArgs args;
    args.m = static_cast<std::size_t>(a.rows());
    args.n = static_cast<std::size_t>(b.cols());
    args.k = static_cast<std::size_t>(a.cols());
    args.a = a.data();
    args.lda = static_cast<std::size_t>(a.rows());
    args.b = b.data();
    args.ldb = static_cast<std::size_t>(b.rows());
    args.c = c.data();
    args.ldc = static_cast<std::size_t>(c.rows());
    args.accumulate = acc;
    gemm(args);
}

}  // namespace

TEST_CASE("scalar zgemm matches a triple loop") {
    Rng rng(11);
    const Matrix a = random_ginibre(5, 3, rng);
    const Matrix b = random_ginibre(3, 4, rng);
    Matrix c = Matrix::Zero(5, 4);
    run_gemm(k::scalar::zgemm, a, b, c, false);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 4; ++j) {
            Complex s = 0.0;
            for (int l = 0; l < 3; ++l) s += a(i, l) * b(l, j);
            CHECK(std::abs(c(i, j) - s) < 1e-14);
        }
}

TEST_CASE("avx2 zgemm agrees with the scalar reference") {
    if (!k::cpu_has_avx2()) {
        MESSAGE("AVX2 not available; equivalence not exercised");
        return;
    }
    Rng rng(12);
    // Odd sizes hit every remainder path of the vector loop.
    for (int m : {1, 2, 3, 7, 16, 17}) {
        for (int n : {1, 4, 9}) {
            for (int kk : {1, 5, 16, 33}) {
                const Matrix a = random_ginibre(m, kk, rng);
                const Matrix b = random_ginibre(kk, n, rng);
                for (bool acc : {false, true}) {
                    const Matrix c0 = random_ginibre(m, n, rng);
                    Matrix cs = c0, cv = c0;
                    run_gemm(k::scalar::zgemm, a, b, cs, acc);
                    run_gemm(k::avx2::zgemm, a, b, cv, acc);
                    const double scale = std::max(1.0, max_abs(cs));
                    CHECK(max_abs(cs - cv) <= 1e-14 * scale * kk);
                }
            }
        }
    }
}

TEST_CASE("avx2 zgemm honours leading dimensions") {
    if (!k::cpu_has_avx2()) return;
    Rng rng(13);
    const Matrix big_a = random_ginibre(9, 6, rng);
    const Matrix big_b = random_ginibre(8, 5, rng);
    Matrix cs = Matrix::Zero(7, 5), cv = Matrix::Zero(7, 5);
    for (auto [gemm, c] : {std::pair{k::scalar::zgemm, &cs}, std::pair{k::avx2::zgemm, &cv}}) {
        k::GemmArgs args{5, 3, 4, big_a.data(), 9, big_b.data(), 8, c->data(), 7, false};
        gemm(args);
    }
    const Matrix expect = big_a.topLeftCorner(5, 4) * big_b.topLeftCorner(4, 3);
    CHECK(max_abs(cs.topLeftCorner(5, 3) - expect) < 1e-13);
    CHECK(max_abs(cv.topLeftCorner(5, 3) - expect) < 1e-13);
    CHECK(max_abs(cv.bottomRows(2)) == 0.0);
}

TEST_CASE("zaxpy variants agree") {
    Rng rng(14);
    for (std::size_t len : {0u, 1u, 2u, 3u, 8u, 31u}) {
        std::vector<Complex> x(len), y(len);
        for (auto& v : x) v = {normal(rng), normal(rng)};
        for (auto& v : y) v = {normal(rng), normal(rng)};
        const Complex alpha(0.3, -1.7);
        std::vector<Complex> ys = y, yv = y;
        k::scalar::zaxpy(len, alpha, x.data(), ys.data());
        if (k::cpu_has_avx2()) k::avx2::zaxpy(len, alpha, x.data(), yv.data());
        else yv = ys;
        for (std::size_t i = 0; i < len; ++i) {
            CHECK(std::abs(ys[i] - (y[i] + alpha * x[i])) < 1e-14);
            CHECK(std::abs(ys[i] - yv[i]) < 1e-14);
        }
    }
}

TEST_CASE("dispatch can be pinned and routes Eigen-level helpers") {
    IsaGuard guard;
    Rng rng(15);
    const Matrix a = random_ginibre(6, 6, rng);
    const Matrix b = random_ginibre(6, 6, rng);
    k::set_isa(k::Isa::scalar);
    CHECK(k::active_isa() == k::Isa::scalar);
    CHECK(k::isa_name(k::Isa::scalar) == "scalar");
    const Matrix ps = k::multiply(a, b);
    CHECK(max_abs(ps - a * b) < 1e-13);
    if (k::cpu_has_avx2()) {
        k::set_isa(k::Isa::avx2);
        CHECK(max_abs(k::multiply(a, b) - ps) < 1e-13);
        CHECK(max_abs(k::congruence(a, b) - a * b * a.adjoint()) < 1e-12);
    } else {
        CHECK_THROWS(k::set_isa(k::Isa::avx2));
    }
}

TEST_CASE("multiply_into accumulates and refuses aliasing") {
    Rng rng(16);
    const Matrix a = random_ginibre(4, 4, rng);
    Matrix b = random_ginibre(4, 4, rng);
    Matrix c = random_ginibre(4, 4, rng);
    const Matrix expect = c + a * b;
    k::multiply_into(a, b, c, true);
    CHECK(max_abs(c - expect) < 1e-13);
    CHECK_THROWS_AS(k::multiply_into(b, b, b), Error);
}

TEST_CASE("axpy on matrices") {
    Rng rng(17);
    const Matrix x = random_ginibre(3, 5, rng);
    Matrix y = random_ginibre(3, 5, rng);
    const Matrix expect = y + Complex(2.0, 1.0) * x;
    k::axpy(Complex(2.0, 1.0), x, y);
    CHECK(max_abs(y - expect) < 1e-14);
    Matrix wrong(2, 2);
    CHECK_THROWS_AS(k::axpy(1.0, x, wrong), DimensionMismatch);
}

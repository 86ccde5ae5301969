#include <atomic>

#include "covmaps/kernels.hpp"

namespace covmaps::kernels {

namespace {

Isa detect() { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
    if (isa == Isa::avx2 && !cpu_has_avx2()) throw Error("avx2 kernels requested but CPU lacks AVX2/FMA");
    current().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void zgemm(const GemmArgs& args) {
    if (active_isa() == Isa::avx2)
        avx2::zgemm(args);
    else
        scalar::zgemm(args);
}

void zaxpy(std::size_t len, std::complex<double> alpha, const std::complex<double>* x,
           std::complex<double>* y) {
    if (active_isa() == Isa::avx2)
        avx2::zaxpy(len, alpha, x, y);
    else
        scalar::zaxpy(len, alpha, x, y);
}

void multiply_into(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate) {
    if (a.cols() != b.rows()) throw DimensionMismatch("multiply: inner dimensions differ");
    if (accumulate) {
        if (c.rows() != a.rows() || c.cols() != b.cols())
            throw DimensionMismatch("multiply: accumulator has wrong shape");
    } else {
        c.resize(a.rows(), b.cols());
    }
    if (c.data() == a.data() || c.data() == b.data())
        throw Error("multiply: output aliases an input");
    GemmArgs g;
    g.m = static_cast<std::size_t>(a.rows());
    g.n = static_cast<std::size_t>(b.cols());
    g.k = static_cast<std::size_t>(a.cols());
    g.a = a.data();
    g.lda = static_cast<std::size_t>(a.rows());
    g.b = b.data();
    g.ldb = static_cast<std::size_t>(b.rows());
    g.c = c.data();
    g.ldc = static_cast<std::size_t>(c.rows());
    g.accumulate = accumulate;
    zgemm(g);
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    Matrix c;
    multiply_into(a, b, c);
    return c;
}

void axpy(Complex alpha, const Matrix& x, Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) throw DimensionMismatch("axpy: shapes differ");
    zaxpy(static_cast<std::size_t>(x.size()), alpha, x.data(), y.data());
}

Matrix congruence(const Matrix& b, const Matrix& c) {
    const Matrix bc = multiply(b, c);
    const Matrix bh = b.adjoint();
    return multiply(bc, bh);
}

}  // namespace covmaps::kernels

#pragma once
// Dense complex kernels with a scalar reference path and an AVX2 path.
//
// All matrices are column-major with explicit leading dimensions, matching
// Eigen's default storage. The active implementation is chosen once at
// startup from CPUID; tests may pin either one.

#include <complex>
#include <cstddef>
#include <string_view>

#include "covmaps/types.hpp"

namespace covmaps::kernels {

enum class Isa { scalar, avx2 };

struct GemmArgs {
    std::size_t m = 0, n = 0, k = 0;
    const std::complex<double>* a = nullptr;
    std::size_t lda = 0;
    const std::complex<double>* b = nullptr;
    std::size_t ldb = 0;
    std::complex<double>* c = nullptr;
    std::size_t ldc = 0;
    bool accumulate = false;  // C += A*B instead of C = A*B
};

namespace scalar {
void zgemm(const GemmArgs& args);
void zaxpy(std::size_t len, std::complex<double> alpha, const std::complex<double>* x,
           std::complex<double>* y);
}  // namespace scalar

namespace avx2 {
void zgemm(const GemmArgs& args);
void zaxpy(std::size_t len, std::complex<double> alpha, const std::complex<double>* x,
           std::complex<double>* y);
}  // namespace avx2

bool cpu_has_avx2();
Isa active_isa();
// Pins the dispatch target. Requesting avx2 on a CPU without it throws.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);

void zgemm(const GemmArgs& args);
void zaxpy(std::size_t len, std::complex<double> alpha, const std::complex<double>* x,
           std::complex<double>* y);

// Eigen-level conveniences routed through the dispatched kernels.
Matrix multiply(const Matrix& a, const Matrix& b);
void multiply_into(const Matrix& a, const Matrix& b, Matrix& c, bool accumulate = false);
void axpy(Complex alpha, const Matrix& x, Matrix& y);
// b * c * b^dagger
Matrix congruence(const Matrix& b, const Matrix& c);

}  // namespace covmaps::kernels

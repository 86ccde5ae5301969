// AVX2/FMA complex kernels. Only the functions below carry the avx2 target
// attribute, so this translation unit is safe to link into binaries that run
// on CPUs without AVX2; dispatch never calls in here unless CPUID allows it.

#include "covmaps/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define COVMAPS_HAVE_X86 1
#else
#define COVMAPS_HAVE_X86 0
#endif

namespace covmaps::kernels::avx2 {

#if COVMAPS_HAVE_X86

namespace {

// y[0:2] += x[0:2] * (br + i bi), two interleaved complex doubles per register.
__attribute__((target("avx2,fma"))) inline __m256d cmul_acc(__m256d acc, __m256d x,
                                                            __m256d br, __m256d bi) {
    const __m256d swapped = _mm256_permute_pd(x, 0b0101);  // [im, re, im, re]
    const __m256d cross = _mm256_mul_pd(swapped, bi);
    // even lanes: x.re*br - x.im*bi, odd lanes: x.im*br + x.re*bi
    return _mm256_add_pd(acc, _mm256_fmaddsub_pd(x, br, cross));
}

}  // namespace

__attribute__((target("avx2,fma"))) void zgemm(const GemmArgs& g) {
    for (std::size_t j = 0; j < g.n; ++j) {
        double* cj = reinterpret_cast<double*>(g.c + j * g.ldc);
        if (!g.accumulate) {
            for (std::size_t i = 0; i < 2 * g.m; ++i) cj[i] = 0.0;
        }
        for (std::size_t p = 0; p < g.k; ++p) {
            const std::complex<double> bpj = g.b[p + j * g.ldb];
            const __m256d br = _mm256_set1_pd(bpj.real());
            const __m256d bi = _mm256_set1_pd(bpj.imag());
            const double* ap = reinterpret_cast<const double*>(g.a + p * g.lda);
            std::size_t i = 0;
            for (; i + 2 <= g.m; i += 2) {
                const __m256d x = _mm256_loadu_pd(ap + 2 * i);
                const __m256d acc = _mm256_loadu_pd(cj + 2 * i);
                _mm256_storeu_pd(cj + 2 * i, cmul_acc(acc, x, br, bi));
            }
            for (; i < g.m; ++i) {
                const double xr = ap[2 * i], xi = ap[2 * i + 1];
                cj[2 * i] += xr * bpj.real() - xi * bpj.imag();
                cj[2 * i + 1] += xi * bpj.real() + xr * bpj.imag();
            }
        }
    }
}

__attribute__((target("avx2,fma"))) void zaxpy(std::size_t len, std::complex<double> alpha,
                                               const std::complex<double>* x,
                                               std::complex<double>* y) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cmul_acc(yv, xv, ar, ai));
    }
    for (; i < len; ++i) y[i] += alpha * x[i];
}

#else

void zgemm(const GemmArgs& g) { scalar::zgemm(g); }

void zaxpy(std::size_t len, std::complex<double> alpha, const std::complex<double>* x,
           std::complex<double>* y) {
    scalar::zaxpy(len, alpha, x, y);
}

#endif

}  // namespace covmaps::kernels::avx2

#include "covmaps/kernels.hpp"

namespace covmaps::kernels::scalar {

void zgemm(const GemmArgs& g) {
    for (std::size_t j = 0; j < g.n; ++j) {
        std::complex<double>* cj = g.c + j * g.ldc;
        if (!g.accumulate) {
            for (std::size_t i = 0; i < g.m; ++i) cj[i] = 0.0;
        }
        for (std::size_t p = 0; p < g.k; ++p) {
            const std::complex<double> bpj = g.b[p + j * g.ldb];
            const std::complex<double>* ap = g.a + p * g.lda;
            for (std::size_t i = 0; i < g.m; ++i) cj[i] += ap[i] * bpj;
        }
    }
}

void zaxpy(std::size_t len, std::complex<double> alpha, const std::complex<double>* x,
           std::complex<double>* y) {
    for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

}  // namespace covmaps::kernels::scalar

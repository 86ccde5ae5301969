#include "covmaps/random.hpp"

#include <cmath>

namespace covmaps {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

Matrix random_ginibre(int rows, int cols, Rng& rng) {
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = Complex(re, im);
        }
    return m;
}

Matrix random_hermitian(int n, Rng& rng) {
    const Matrix g = random_ginibre(n, n, rng);
    return 0.5 * (g + g.adjoint());
}

Matrix random_unitary(int n, Rng& rng) {
    const Matrix g = random_ginibre(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

Matrix random_psd(int n, int rank, Rng& rng) {
    const Matrix g = random_ginibre(n, rank, rng);
    return g * g.adjoint();
}

Matrix random_density(int n, Rng& rng) {
    const Matrix p = random_psd(n, n, rng);
    return p / p.trace().real();
}

std::vector<Matrix> random_kraus(int n, int count, Rng& rng) {
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) out.push_back(random_ginibre(n, n, rng) / std::sqrt(static_cast<double>(n)));
    return out;
}

}  // namespace covmaps

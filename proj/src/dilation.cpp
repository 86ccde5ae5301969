#include "covmaps/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace covmaps {

namespace {

struct MixingFit {
    Matrix m;  // M_km
    double residual = 0.0;
    bool rank_deficient = false;
};

// Least squares for  left Z_k right = sum_m M_km Z_m  over all k.
MixingFit fit_mixing(const std::vector<Matrix>& family, const Matrix& left, const Matrix& right) {
    const auto r = static_cast<Eigen::Index>(family.size());
    MixingFit fit;
    if (r == 0) {
        fit.m.resize(0, 0);
        return fit;
    }
    const Eigen::Index n = family.front().rows();
    Matrix x(n * n, r);
    Matrix y(n * n, r);
    for (Eigen::Index k = 0; k < r; ++k) {
        const Matrix& z = family[static_cast<std::size_t>(k)];
        const Matrix moved = left * z * right;
        x.col(k) = Eigen::Map<const Vector>(z.data(), n * n);
        y.col(k) = Eigen::Map<const Vector>(moved.data(), n * n);
    }
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(x);
    fit.rank_deficient = cod.rank() < r;
    const Matrix mt = cod.solve(y);
    fit.m = mt.transpose();
    fit.residual = (x * mt - y).norm();
    return fit;
}

Matrix stack_kraus(const std::vector<Matrix>& kraus, int n) {
    const int r = static_cast<int>(kraus.size());
    Matrix v = Matrix::Zero(n * r, n);
    for (int k = 0; k < r; ++k)
        for (int i = 0; i < n; ++i) v.row(i * r + k) = kraus[static_cast<std::size_t>(k)].row(i);
    return v;
}

// Kraus operators sqrt(w) G of the CP map, with the numerical rank cut.
std::vector<Matrix> folded_kraus(const MapMatrix& cp_map, double tol, bool& truncated) {
    const OperatorSum ops = to_operator_sum(cp_map, tol);
    const Matrix c = cp_map.frobenius_coefficients();
    const double noise = 100.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, c.norm());
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < ops.weights.size(); ++k) {
        const double w = ops.weights[k];
        if (w > kKrausRankCutoff)
            out.push_back(std::sqrt(w) * ops.operators[k]);
        else if (std::abs(w) > noise)
            truncated = true;
    }
    return out;
}

Dilation assemble(int n, DilationKind kind, std::vector<DilationPart> parts, bool truncated) {
    Dilation d;
    d.n = n;
    d.kind = kind;
    d.truncated = truncated;
    int rows = 0;
    for (const DilationPart& p : parts) rows += p.k_dim(n);
    d.k_dim = rows;
    d.v = Matrix::Zero(rows, n);
    int offset = 0;
    for (const DilationPart& p : parts) {
        d.v.middleRows(offset, p.k_dim(n)) = p.v;
        offset += p.k_dim(n);
    }
    d.parts = std::move(parts);
    return d;
}

DilationPart homomorphism_part(const MapMatrix& m, double tol, bool& truncated) {
    DilationPart part;
    part.kind = DilationKind::homomorphism;
    // phi(a) = sum A_k a A_k^dagger = sum Z_k^dagger a Z_k with Z_k = A_k^dagger
    for (Matrix& a : folded_kraus(m, tol, truncated)) part.kraus.push_back(a.adjoint());
    part.v = stack_kraus(part.kraus, m.n());
    return part;
}

DilationPart antihomomorphism_part(const MapMatrix& m, double tol, bool& truncated) {
    DilationPart part;
    part.kind = DilationKind::antihomomorphism;
    // tau o m = sum B_k a B_k^dagger, so m(a) = sum Z_k^dagger a^T Z_k with Z_k = B_k^T
    for (Matrix& b : folded_kraus(compose_transpose(m), tol, truncated)) part.kraus.push_back(b.transpose());
    part.v = stack_kraus(part.kraus, m.n());
    return part;
}

}  // namespace

Matrix DilationPart::represent(const Matrix& a) const {
    const Matrix id = Matrix::Identity(rank(), rank());
    return kind == DilationKind::antihomomorphism ? kron(a.transpose(), id) : kron(a, id);
}

Matrix Dilation::represent(const Matrix& a) const {
    if (a.rows() != n || a.cols() != n) throw DimensionMismatch("Dilation::represent: wrong input size");
    Matrix out = Matrix::Zero(k_dim, k_dim);
    int offset = 0;
    for (const DilationPart& p : parts) {
        const int size = p.k_dim(n);
        out.block(offset, offset, size, size) = p.represent(a);
        offset += size;
    }
    return out;
}

Matrix Dilation::reconstruct(const Matrix& a) const { return v.adjoint() * represent(a) * v; }

Matrix Dilation::projection(std::size_t part) const {
    if (part >= parts.size()) throw InputError("Dilation::projection: no such summand");
    Matrix p = Matrix::Zero(k_dim, k_dim);
    int offset = 0;
    for (std::size_t i = 0; i < part; ++i) offset += parts[i].k_dim(n);
    const int size = parts[part].k_dim(n);
    p.block(offset, offset, size, size).setIdentity();
    return p;
}

Dilation stinespring(const MapMatrix& m, double tol) {
    const PositivityReport r = cp_report(m, tol);
    if (!r.holds)
        throw PreconditionFailure("stinespring: map is not CP (min eigenvalue " + std::to_string(r.min_eigenvalue) + ")");
    bool truncated = false;
    std::vector<DilationPart> parts;
    DilationPart part = homomorphism_part(m, tol, truncated);
    if (part.rank() > 0) parts.push_back(std::move(part));
    return assemble(m.n(), DilationKind::homomorphism, std::move(parts), truncated);
}

Dilation costinespring(const MapMatrix& m, double tol) {
    const PositivityReport r = cocp_report(m, tol);
    if (!r.holds)
        throw PreconditionFailure("costinespring: map is not coCP (min eigenvalue " + std::to_string(r.min_eigenvalue) +
                                  ")");
    bool truncated = false;
    std::vector<DilationPart> parts;
    DilationPart part = antihomomorphism_part(m, tol, truncated);
    if (part.rank() > 0) parts.push_back(std::move(part));
    return assemble(m.n(), DilationKind::antihomomorphism, std::move(parts), truncated);
}

Dilation jordan_dilation(const MapMatrix& m1, const MapMatrix& m2, double tol) {
    // Validates both summands.
    decomposable_certificate(m1, m2, tol);
    bool truncated = false;
    std::vector<DilationPart> parts;
    DilationPart hom = homomorphism_part(m1, tol, truncated);
    if (hom.rank() > 0) parts.push_back(std::move(hom));
    DilationPart anti = antihomomorphism_part(m2, tol, truncated);
    if (anti.rank() > 0) parts.push_back(std::move(anti));
    return assemble(m1.n(), DilationKind::jordan, std::move(parts), truncated);
}

KrausCovarianceWitness kraus_covariance_witness(const OperatorSum& kraus, const TorusElement& g, bool conjugate,
                                                double tol) {
    std::vector<Matrix> family;
    for (std::size_t k = 0; k < kraus.operators.size(); ++k) {
        const double w = kraus.weights[k];
        if (w < -tol)
            throw PreconditionFailure("kraus_covariance_witness: negative weight " + std::to_string(w) +
                                      " (map is not CP)");
        family.push_back(std::sqrt(std::max(w, 0.0)) * kraus.operators[k]);
    }
    if (family.empty()) throw InputError("kraus_covariance_witness: empty Kraus family");
    if (family.front().rows() != g.n()) throw DimensionMismatch("kraus_covariance_witness: dimension mismatch");

    const Matrix u = diag_unitary(g);
    const Matrix left = conjugate ? conj_diag_unitary(g) : u;
    const MixingFit fit = fit_mixing(family, left, u.adjoint());
    KrausCovarianceWitness out;
    out.n_matrix = fit.m;
    out.residual = fit.residual;
    out.rank_deficient = fit.rank_deficient;
    const auto r = fit.m.rows();
    out.unitarity_residual = max_abs(fit.m * fit.m.adjoint() - Matrix::Identity(r, r));
    return out;
}

CovarianceIntertwiner covariance_intertwiner(const Dilation& d, int samples, double tol, std::uint64_t seed) {
    auto part_intertwiner = [](const Dilation& dil, const TorusElement& g, double& fit_residual) {
        const Matrix u = diag_unitary(g);
        Matrix w = Matrix::Zero(dil.k_dim, dil.k_dim);
        int offset = 0;
        fit_residual = 0.0;
        for (const DilationPart& p : dil.parts) {
            const Matrix q = p.kind == DilationKind::antihomomorphism ? conj_diag_unitary(g) : u;
            // Z_k U = Q sum_m M_km Z_m  gives  V U = (Q kron M) V
            const MixingFit fit = fit_mixing(p.kraus, q.adjoint(), u);
            fit_residual = std::max(fit_residual, fit.residual);
            const int size = p.k_dim(dil.n);
            w.block(offset, offset, size, size) = kron(q, fit.m);
            offset += size;
        }
        return w;
    };

    CovarianceIntertwiner out;
    out.truncated = d.truncated;
    out.w = [d, part_intertwiner](const TorusElement& g) {
        double ignored = 0.0;
        return part_intertwiner(d, g, ignored);
    };

    Rng rng(seed);
    std::vector<TorusElement> points;
    points.push_back(TorusElement::identity(d.n));
    for (int s = 0; s < samples; ++s) points.push_back(TorusElement::random(d.n, rng));
    for (const TorusElement& g : points) {
        double fit_residual = 0.0;
        const Matrix w = part_intertwiner(d, g, fit_residual);
        const Matrix u = diag_unitary(g);
        out.intertwining_residual = std::max(out.intertwining_residual, max_abs(d.v * u - w * d.v));
        Matrix a = random_ginibre(d.n, d.n, rng);
        a /= a.norm();
        const Matrix moved = u * a * u.adjoint();
        out.representation_residual =
            std::max(out.representation_residual, max_abs(d.represent(moved) - w * d.represent(a) * w.adjoint()));
        out.unitarity_residual =
            std::max(out.unitarity_residual, max_abs(w * w.adjoint() - Matrix::Identity(d.k_dim, d.k_dim)));
    }
    const double worst = std::max({out.intertwining_residual, out.representation_residual, out.unitarity_residual});
    if (worst > tol)
        throw NoIntertwinerFound("covariance_intertwiner: residual " + std::to_string(worst) + " exceeds " +
                                 std::to_string(tol) + "; the dilated map is not covariant to tolerance");
    return out;
}

}  // namespace covmaps

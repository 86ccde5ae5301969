#include "covmaps/covariance.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "covmaps/kernels.hpp"

namespace covmaps {

namespace {

double reduce_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

void require_matching(const TorusElement& g, const FrobeniusBasis& basis) {
    if (g.n() != basis.n)
        throw DimensionMismatch("torus element has " + std::to_string(g.n()) + " angles, basis has n=" +
                                std::to_string(basis.n));
}

// Columns hold the row-major flattening of each matrix, so W^dagger W' is
// the table of Hilbert-Schmidt inner products tr(F_i^dagger F'_j).
Matrix flatten_columns(const std::vector<Matrix>& mats, int n) {
    Matrix w(n * n, static_cast<Eigen::Index>(mats.size()));
    for (std::size_t i = 0; i < mats.size(); ++i)
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) w(r * n + c, static_cast<Eigen::Index>(i)) = mats[i](r, c);
    return w;
}

Matrix frame_inner_product(const Matrix& left, const Matrix& right, const FrobeniusBasis& basis) {
    // tr(F_i^dagger left F_j right)
    std::vector<Matrix> moved;
    moved.reserve(basis.matrices.size());
    for (const Matrix& f : basis.matrices) moved.push_back(left * f * right);
    return basis.to_canonical().adjoint() * flatten_columns(moved, basis.n);
}

// Fixed probe points with pairwise distinct angles, where the difference
// matrix D is invertible.
std::vector<TorusElement> distinct_probes(int n) {
    constexpr double golden = 0.6180339887498949;
    std::vector<TorusElement> out;
    for (int probe = 1; probe <= 2; ++probe) {
        std::vector<double> x(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double frac = std::fmod((j + 1) * golden * probe + 0.1 * probe, 1.0);
            x[static_cast<std::size_t>(j)] = kTwoPi * frac;
        }
        out.emplace_back(std::move(x));
    }
    return out;
}

Matrix unit_random_matrix(int n, Rng& rng) {
    Matrix a = random_ginibre(n, n, rng);
    return a / a.norm();
}

CovarianceReport torus_report(const MapMatrix& m, int samples, double tol, std::uint64_t seed, bool conjugate) {
    const int n = m.n();
    const FrobeniusBasis& basis = frobenius_basis(n);
    const Matrix s = to_superoperator(m);
    const Matrix c = m.frobenius_coefficients();
    Rng rng(seed);

    std::vector<TorusElement> points = distinct_probes(n);
    for (int k = 0; k < samples; ++k) points.push_back(TorusElement::random(n, rng));

    CovarianceReport report;
    for (const TorusElement& g : points) {
        const Matrix u = diag_unitary(g);
        const Matrix v = conjugate ? conj_diag_unitary(g) : u;
        const Matrix a = unit_random_matrix(n, rng);
        const Vector va = Eigen::Map<const Vector>(a.data(), n * n);
        const Matrix moved = u * a * u.adjoint();
        const Vector lhs = s * Eigen::Map<const Vector>(moved.data(), n * n);
        const Vector phi_a = s * va;
        const Matrix phi_a_mat = Eigen::Map<const Matrix>(phi_a.data(), n, n);
        const Matrix rhs = v * phi_a_mat * v.adjoint();
        const Matrix lhs_mat = Eigen::Map<const Matrix>(lhs.data(), n, n);
        report.identity_residual = std::max(report.identity_residual, (lhs_mat - rhs).norm());

        const Matrix frame = conjugate ? build_beta(g, basis) : build_alpha(g, basis);
        report.commutation_residual = std::max(report.commutation_residual, max_abs(commutator(c, frame)));
    }
    report.identity_holds = report.identity_residual <= tol;
    report.commutation_holds = report.commutation_residual <= tol;
    report.covariant = report.identity_holds && report.commutation_holds;
    return report;
}

Matrix mask_covariant(const Matrix& m, int n) {
    const int p = n * (n - 1) / 2;
    Matrix r = Matrix::Zero(n * n, n * n);
    for (int k = 0; k < p; ++k) {
        const Complex c1 = 0.5 * (m(k, k) + m(p + k, p + k));
        const Complex c2 = 0.5 * (m(p + k, k) - m(k, p + k));
        r(k, k) = c1;
        r(p + k, p + k) = c1;
        r(p + k, k) = c2;
        r(k, p + k) = -c2;
    }
    r.bottomRightCorner(n, n) = m.bottomRightCorner(n, n);
    return r;
}

}  // namespace

// --- torus -----------------------------------------------------------------

TorusElement::TorusElement(std::vector<double> angles) : x_(std::move(angles)) {
    if (x_.empty()) throw InvalidDimension("torus element needs at least one angle");
    for (double& x : x_) x = reduce_angle(x);
}

TorusElement TorusElement::identity(int n) { return TorusElement(std::vector<double>(static_cast<std::size_t>(n), 0.0)); }

TorusElement TorusElement::random(int n, Rng& rng) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = uniform(rng, 0.0, kTwoPi);
    return TorusElement(std::move(x));
}

TorusElement TorusElement::operator*(const TorusElement& other) const {
    if (other.n() != n()) throw DimensionMismatch("torus product of different dimensions");
    std::vector<double> x(x_.size());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = x_[j] + other.x_[j];
    return TorusElement(std::move(x));
}

TorusElement TorusElement::inverse() const {
    std::vector<double> x(x_.size());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = -x_[j];
    return TorusElement(std::move(x));
}

Matrix diag_unitary(const TorusElement& g) {
    Matrix u = Matrix::Zero(g.n(), g.n());
    for (int j = 0; j < g.n(); ++j) u(j, j) = std::polar(1.0, g[j]);
    return u;
}

Matrix conj_diag_unitary(const TorusElement& g) {
    Matrix u = Matrix::Zero(g.n(), g.n());
    for (int j = 0; j < g.n(); ++j) u(j, j) = std::polar(1.0, -g[j]);
    return u;
}

// --- frames ------------------------------------------------------------------

Matrix alpha_inner_product(const TorusElement& g, const FrobeniusBasis& basis) {
    require_matching(g, basis);
    const Matrix u = diag_unitary(g);
    return frame_inner_product(u.adjoint(), u, basis);
}

Matrix alpha_closed_form(const TorusElement& g, const FrobeniusBasis& basis) {
    require_matching(g, basis);
    const int n = basis.n;
    const int p = basis.pair_count();
    Matrix a = Matrix::Identity(n * n, n * n);
    for (int k = 0; k < p; ++k) {
        const auto [mu, nu] = basis.pairs[static_cast<std::size_t>(k)];
        const double d = g[mu] - g[nu];
        a(k, k) = std::cos(d);
        a(k, p + k) = -std::sin(d);
        a(p + k, k) = std::sin(d);
        a(p + k, p + k) = std::cos(d);
    }
    return a;
}

Matrix build_alpha(const TorusElement& g, const FrobeniusBasis& basis) {
    const Matrix closed = alpha_closed_form(g, basis);
    const double gap = max_abs(closed - alpha_inner_product(g, basis));
    if (gap > kExactTol)
        throw InternalConsistency("alpha frame: closed form and inner products differ by " + std::to_string(gap));
    return closed;
}

Matrix beta_inner_product(const TorusElement& g, const FrobeniusBasis& basis) {
    require_matching(g, basis);
    const Matrix u = diag_unitary(g);
    return frame_inner_product(u, u, basis);
}

Matrix beta_diagonal_block(const TorusElement& g, const FrobeniusBasis& basis) {
    require_matching(g, basis);
    const int n = basis.n;
    const Matrix u = diag_unitary(g);
    Matrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Matrix& fi = basis.matrices[static_cast<std::size_t>(basis.diagonal_index(i))];
            const Matrix& fj = basis.matrices[static_cast<std::size_t>(basis.diagonal_index(j))];
            r(i, j) = (fi.adjoint() * u * fj * u).trace();
        }
    return r;
}

Matrix beta_closed_form(const TorusElement& g, const FrobeniusBasis& basis) {
    require_matching(g, basis);
    const int n = basis.n;
    const int p = basis.pair_count();
    Matrix b = Matrix::Zero(n * n, n * n);
    for (int k = 0; k < p; ++k) {
        const auto [mu, nu] = basis.pairs[static_cast<std::size_t>(k)];
        const Complex phase = std::polar(1.0, g[mu] + g[nu]);
        b(k, k) = phase;
        b(p + k, p + k) = phase;
    }
    // R(g) = sum_a e^{2 i x_a} r_a r_a^T in its eigenbasis.
    const std::vector<RealVector> r = diagonal_eigenvectors(n);
    Matrix block = Matrix::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        const Vector ra = r[static_cast<std::size_t>(a)].cast<Complex>();
        block += std::polar(1.0, 2.0 * g[a]) * ra * ra.transpose();
    }
    b.bottomRightCorner(n, n) = block;
    return b;
}

Matrix build_beta(const TorusElement& g, const FrobeniusBasis& basis) {
    const Matrix closed = beta_closed_form(g, basis);
    const double gap = max_abs(closed - beta_inner_product(g, basis));
    if (gap > kExactTol)
        throw InternalConsistency("beta frame: closed form and inner products differ by " + std::to_string(gap));
    return closed;
}

Matrix alpha_log(const TorusElement& g, const FrobeniusBasis& basis) {
    require_matching(g, basis);
    const int n = basis.n;
    const int p = basis.pair_count();
    Matrix a = Matrix::Zero(n * n, n * n);
    for (int k = 0; k < p; ++k) {
        const auto [mu, nu] = basis.pairs[static_cast<std::size_t>(k)];
        const double d = g[mu] - g[nu];
        a(k, p + k) = -d;
        a(p + k, k) = d;
    }
    return a;
}

// --- congruence ---------------------------------------------------------------

bool congruence_free_check(std::span<const Complex> spectrum, Complex z, double tol) {
    const double zmag = std::abs(z);
    if (zmag == 0.0) throw InputError("congruence_free_check: z must be nonzero");
    double diameter = 0.0;
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        for (std::size_t j = i + 1; j < spectrum.size(); ++j)
            diameter = std::max(diameter, std::abs(spectrum[i] - spectrum[j]));
    const int kmax = static_cast<int>(std::floor(diameter / zmag)) + 1;
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        for (std::size_t j = i + 1; j < spectrum.size(); ++j) {
            const Complex d = spectrum[i] - spectrum[j];
            for (int k = 1; k <= kmax; ++k) {
                const Complex kz = static_cast<double>(k) * z;
                if (std::abs(d - kz) <= tol || std::abs(d + kz) <= tol) return false;
            }
        }
    return true;
}

double congruence_free_scale(std::span<const Complex> set, Complex z) {
    if (set.empty()) throw InputError("congruence_free_scale: empty set");
    if (std::abs(z) == 0.0) throw InputError("congruence_free_scale: z must be nonzero");
    double diameter = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j) diameter = std::max(diameter, std::abs(set[i] - set[j]));
    if (diameter == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(z) / diameter;
}

ExpCommutationResult exp_commutation_equiv(const Matrix& a, const Matrix& b, double tol, bool check_precondition) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw DimensionMismatch("exp_commutation_equiv: A and B must be square of equal size");
    if (check_precondition) {
        Eigen::ComplexEigenSolver<Matrix> eig(a, false);
        const Vector spec = eig.eigenvalues();
        if (!congruence_free_check(std::span<const Complex>(spec.data(), static_cast<std::size_t>(spec.size())),
                                   Complex(0.0, kTwoPi)))
            throw CongruenceViolation("exp_commutation_equiv: spectrum of A is not 2 pi i-congruence free");
    }
    const Matrix ea = a.exp();
    ExpCommutationResult r;
    r.exp_commutator = max_abs(commutator(ea, b));
    r.commutator = max_abs(commutator(a, b));
    const bool exp_zero = r.exp_commutator <= tol;
    const bool plain_zero = r.commutator <= tol;
    if (exp_zero && plain_zero)
        r.verdict = ExpCommutation::both_commute;
    else if (!exp_zero && !plain_zero)
        r.verdict = ExpCommutation::neither;
    else
        r.verdict = ExpCommutation::violation;
    return r;
}

// --- covariance tests -------------------------------------------------------

CovarianceReport covariance_report(const MapMatrix& m, int samples, double tol, std::uint64_t seed) {
    return torus_report(m, samples, tol, seed, false);
}

bool is_covariant(const MapMatrix& m, int samples, double tol, std::uint64_t seed) {
    return covariance_report(m, samples, tol, seed).covariant;
}

CovarianceReport conjugate_covariance_report(const MapMatrix& m, int samples, double tol, std::uint64_t seed) {
    return torus_report(m, samples, tol, seed, true);
}

bool is_conjugate_covariant(const MapMatrix& m, int samples, double tol, std::uint64_t seed) {
    return conjugate_covariance_report(m, samples, tol, seed).covariant;
}

CovarianceReport sampled_covariance(const MapMatrix& m, std::span<const Matrix> u_family,
                                    std::span<const Matrix> v_family, double tol, std::uint64_t seed) {
    if (u_family.size() != v_family.size()) throw InputError("sampled_covariance: U and V families differ in length");
    const int n = m.n();
    const FrobeniusBasis& basis = frobenius_basis(n);
    const Matrix c = m.frobenius_coefficients();
    Rng rng(seed);
    CovarianceReport report;
    for (std::size_t s = 0; s < u_family.size(); ++s) {
        const Matrix& u = u_family[s];
        const Matrix& v = v_family[s];
        if (u.rows() != n || v.rows() != n) throw DimensionMismatch("sampled_covariance: family member has wrong size");
        const Matrix a = unit_random_matrix(n, rng);
        const Matrix moved = u * a * u.inverse();
        const Matrix lhs = covmaps::apply(m, moved);
        const Matrix rhs = v * covmaps::apply(m, a) * v.inverse();
        report.identity_residual = std::max(report.identity_residual, (lhs - rhs).norm());
        const Matrix frame = frame_inner_product(v.inverse(), u, basis);
        report.commutation_residual = std::max(report.commutation_residual, max_abs(commutator(c, frame)));
    }
    report.identity_holds = report.identity_residual <= tol;
    report.commutation_holds = report.commutation_residual <= tol;
    report.covariant = report.identity_holds && report.commutation_holds;
    return report;
}

// --- projection ------------------------------------------------------------------

MapMatrix project_covariant(const MapMatrix& m, ProjectionMode mode) {
    const int n = m.n();
    const Matrix c = m.frobenius_coefficients();
    if (mode == ProjectionMode::closed_form) return {n, BasisTag::frobenius, mask_covariant(c, n)};

    if (n > kQuadratureMaxDim)
        throw PreconditionFailure("project_covariant: quadrature mode supports n <= " +
                                  std::to_string(kQuadratureMaxDim) + ", got n=" + std::to_string(n));
    const FrobeniusBasis& basis = frobenius_basis(n);
    std::size_t nodes = 1;
    for (int j = 0; j < n; ++j) nodes *= kQuadratureNodes;

    Matrix sum = Matrix::Zero(n * n, n * n);
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (std::size_t node = 0; node < nodes; ++node) {
        std::size_t rest = node;
        for (int j = 0; j < n; ++j) {
            x[static_cast<std::size_t>(j)] = kTwoPi * static_cast<double>(rest % kQuadratureNodes) / kQuadratureNodes;
            rest /= kQuadratureNodes;
        }
        // Ad_U o phi o Ad_U^-1 has coefficients B c B^dagger with
        // B_ki = tr(F_k^dagger U F_i U^-1).
        const TorusElement g(x);
        const Matrix frame = alpha_inner_product(g.inverse(), basis);
        sum += kernels::congruence(frame, c);
    }
    sum /= static_cast<double>(nodes);
    return {n, BasisTag::frobenius, std::move(sum)};
}

// --- blocks ----------------------------------------------------------------------

Matrix CovariantBlocks::assemble() const {
    const int n = this->n();
    const int p = n * (n - 1) / 2;
    if (c1.size() != p || c2.size() != p || c3.cols() != n)
        throw DimensionMismatch("CovariantBlocks: block sizes inconsistent with n=" + std::to_string(n));
    Matrix c = Matrix::Zero(n * n, n * n);
    for (int k = 0; k < p; ++k) {
        c(k, k) = c1(k);
        c(p + k, p + k) = c1(k);
        c(p + k, k) = c2(k);
        c(k, p + k) = -c2(k);
    }
    c.bottomRightCorner(n, n) = c3;
    return c;
}

MapMatrix CovariantBlocks::to_map() const { return {n(), BasisTag::frobenius, assemble()}; }

BlockClassification classify_covariant_blocks(const MapMatrix& m, double tol) {
    const int n = m.n();
    const int p = n * (n - 1) / 2;
    const Matrix c = m.frobenius_coefficients();
    const Matrix masked = mask_covariant(c, n);
    BlockClassification out;
    out.residual = (c - masked).norm();
    if (out.residual > tol) return out;
    CovariantBlocks b;
    b.c1.resize(p);
    b.c2.resize(p);
    for (int k = 0; k < p; ++k) {
        b.c1(k) = masked(k, k);
        b.c2(k) = masked(p + k, k);
    }
    b.c3 = masked.bottomRightCorner(n, n);
    out.blocks = std::move(b);
    return out;
}

RealVector covariant_corner_spectrum(const CovariantBlocks& blocks) {
    const Eigen::Index p = blocks.c1.size();
    RealVector out(2 * p);
    for (Eigen::Index k = 0; k < p; ++k) {
        // [[s, -i t], [i t, s]] has eigenvalues s -/+ t.
        const double s = blocks.c1(k).real();
        const double t = blocks.c2(k).imag();
        out(2 * k) = s - std::abs(t);
        out(2 * k + 1) = s + std::abs(t);
    }
    return out;
}

bool cp_covariant_test(const CovariantBlocks& blocks, double tol) {
    for (Eigen::Index k = 0; k < blocks.c1.size(); ++k) {
        if (std::abs(blocks.c1(k).imag()) > tol)
            throw PreconditionFailure("cp_covariant_test: C1 must be real for a Hermiticity-preserving map");
        if (std::abs(blocks.c2(k).real()) > tol)
            throw PreconditionFailure("cp_covariant_test: C2 must be imaginary for a Hermiticity-preserving map");
    }
    if (max_abs(blocks.c3 - blocks.c3.adjoint()) > tol)
        throw PreconditionFailure("cp_covariant_test: C3 must be Hermitian for a Hermiticity-preserving map");

    const RealVector corner = covariant_corner_spectrum(blocks);
    if (corner.size() > 0 && corner.minCoeff() < -tol) return false;
    const Matrix h = 0.5 * (blocks.c3 + blocks.c3.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff() >= -tol;
}

Matrix ConjugateCovariantBlocks::assemble() const {
    const int n = this->n();
    const int p = n * (n - 1) / 2;
    if (c11.size() != p || c12.size() != p || c21.size() != p || c22.size() != p)
        throw DimensionMismatch("ConjugateCovariantBlocks: block sizes inconsistent with n=" + std::to_string(n));
    Matrix c = Matrix::Zero(n * n, n * n);
    for (int k = 0; k < p; ++k) {
        c(k, k) = c11(k);
        c(k, p + k) = c12(k);
        c(p + k, k) = c21(k);
        c(p + k, p + k) = c22(k);
    }
    c.bottomRightCorner(n, n) = build_c33(a);
    return c;
}

MapMatrix ConjugateCovariantBlocks::to_map() const { return {n(), BasisTag::frobenius, assemble()}; }

ConjugateBlockClassification classify_conjugate_blocks(const MapMatrix& m, double tol) {
    const int n = m.n();
    const int p = n * (n - 1) / 2;
    const Matrix c = m.frobenius_coefficients();
    ConjugateCovariantBlocks b;
    b.c11.resize(p);
    b.c12.resize(p);
    b.c21.resize(p);
    b.c22.resize(p);
    for (int k = 0; k < p; ++k) {
        b.c11(k) = c(k, k);
        b.c12(k) = c(k, p + k);
        b.c21(k) = c(p + k, k);
        b.c22(k) = c(p + k, p + k);
    }
    const Matrix c33 = c.bottomRightCorner(n, n);
    const std::vector<RealVector> r = diagonal_eigenvectors(n);
    b.a.resize(n);
    for (int i = 0; i < n; ++i) {
        const Vector ri = r[static_cast<std::size_t>(i)].cast<Complex>();
        b.a(i) = (ri.transpose() * c33 * ri)(0, 0);
    }
    ConjugateBlockClassification out;
    out.residual = (c - b.assemble()).norm();
    if (out.residual <= tol) out.blocks = std::move(b);
    return out;
}

RealVector conjugate_corner_min_eigenvalues(const ConjugateCovariantBlocks& blocks) {
    const Eigen::Index p = blocks.c11.size();
    RealVector out(p);
    for (Eigen::Index k = 0; k < p; ++k) {
        const double s = blocks.c11(k).real();
        const double r = blocks.c22(k).real();
        const double w = std::abs(blocks.c21(k));
        out(k) = 0.5 * (s + r - std::sqrt((s - r) * (s - r) + 4.0 * w * w));
    }
    return out;
}

bool cocp_conjugate_test(const ConjugateCovariantBlocks& blocks, double tol) {
    for (Eigen::Index k = 0; k < blocks.c11.size(); ++k) {
        if (std::abs(blocks.c11(k).imag()) > tol || std::abs(blocks.c22(k).imag()) > tol) return false;
        if (std::abs(blocks.c12(k) - std::conj(blocks.c21(k))) > tol) return false;
    }
    for (Eigen::Index i = 0; i < blocks.a.size(); ++i) {
        if (std::abs(blocks.a(i).imag()) > tol) return false;
        if (blocks.a(i).real() < -tol) return false;
    }
    // s, r >= 0 and |w|^2 <= s r together are equivalent to the lower corner
    // eigenvalue being nonnegative.
    const RealVector lower = conjugate_corner_min_eigenvalues(blocks);
    return lower.size() == 0 || lower.minCoeff() >= -tol;
}

std::vector<RealVector> diagonal_eigenvectors(int n) {
    const FrobeniusBasis& basis = frobenius_basis(n);
    std::vector<RealVector> out(static_cast<std::size_t>(n), RealVector(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            out[static_cast<std::size_t>(i)](k) =
                basis.matrices[static_cast<std::size_t>(basis.diagonal_index(k))](i, i).real();
    return out;
}

Matrix build_c33(const Vector& a) {
    const int n = static_cast<int>(a.size());
    require_dimension(n);
    Matrix k = Matrix::Zero(n, n);
    // One-based r, s as in the kappa formulas; a(r) is a_{r+1}.
    Complex partial = 0.0;
    for (int r = 1; r < n; ++r) {
        partial += a(r - 1);
        const double rd = r;
        const Complex off = partial - rd * a(r);
        k(r - 1, r - 1) = (partial + rd * rd * a(r)) / (rd * (rd + 1.0));
        for (int s = r + 1; s < n; ++s) {
            const double sd = s;
            k(r - 1, s - 1) = off / std::sqrt(rd * sd * (rd + 1.0) * (sd + 1.0));
            k(s - 1, r - 1) = k(r - 1, s - 1);
        }
        k(r - 1, n - 1) = off / std::sqrt(static_cast<double>(n) * rd * (rd + 1.0));
        k(n - 1, r - 1) = k(r - 1, n - 1);
    }
    k(n - 1, n - 1) = a.sum() / static_cast<double>(n);
    return k;
}

// --- random maps --------------------------------------------------------------

CovariantBlocks random_cp_blocks(int n, Rng& rng) {
    require_dimension(n);
    const int p = n * (n - 1) / 2;
    CovariantBlocks b;
    b.c1.resize(p);
    b.c2.resize(p);
    for (int k = 0; k < p; ++k) {
        const double t = normal(rng);
        const double s = std::abs(t) + 0.5 * std::abs(normal(rng));
        b.c1(k) = s;
        b.c2(k) = Complex(0.0, t);
    }
    b.c3 = random_psd(n, n, rng) / static_cast<double>(n);
    return b;
}

ConjugateCovariantBlocks random_conjugate_cp_blocks(int n, Rng& rng) {
    require_dimension(n);
    const int p = n * (n - 1) / 2;
    ConjugateCovariantBlocks b;
    b.c11.resize(p);
    b.c12.resize(p);
    b.c21.resize(p);
    b.c22.resize(p);
    for (int k = 0; k < p; ++k) {
        const double s = std::abs(normal(rng)) + 0.05;
        const double r = std::abs(normal(rng)) + 0.05;
        const double mag = std::sqrt(s * r) * uniform(rng, 0.0, 1.0);
        const Complex w = std::polar(mag, uniform(rng, 0.0, kTwoPi));
        b.c11(k) = s;
        b.c22(k) = r;
        b.c21(k) = w;
        b.c12(k) = std::conj(w);
    }
    b.a.resize(n);
    for (int i = 0; i < n; ++i) b.a(i) = std::abs(normal(rng));
    return b;
}

RandomCovariantMap random_covariant_map(CovariantKind kind, int n, std::uint64_t seed) {
    Rng rng(seed);
    const MapMatrix zero = MapMatrix::zero(n);
    switch (kind) {
        case CovariantKind::cp: {
            MapMatrix m = random_cp_blocks(n, rng).to_map();
            return {kind, m, m, zero};
        }
        case CovariantKind::cocp: {
            MapMatrix m = compose_transpose(random_conjugate_cp_blocks(n, rng).to_map());
            return {kind, m, zero, m};
        }
        case CovariantKind::decomposable:
        default: {
            MapMatrix cp = random_cp_blocks(n, rng).to_map();
            MapMatrix cocp = compose_transpose(random_conjugate_cp_blocks(n, rng).to_map());
            return {kind, cp + cocp, cp, cocp};
        }
    }
}

}  // namespace covmaps

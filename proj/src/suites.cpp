#include "covmaps/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "covmaps/basis.hpp"
#include "covmaps/covariance.hpp"
#include "covmaps/dilation.hpp"
#include "covmaps/dynamics.hpp"
#include "covmaps/linmap.hpp"
#include "covmaps/random.hpp"

namespace covmaps {

bool SuiteResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.passed; });
}

namespace {

using Clock = std::chrono::steady_clock;

std::vector<int> sweep(const SuiteOptions& o, std::vector<int> full) {
    if (o.n) return {*o.n};
    return full;
}

int count(const SuiteOptions& o, int full, int reduced) { return o.reduced ? reduced : full; }

SuiteCheck below(std::string name, double value, double tol, std::string detail = {}) {
    return {std::move(name), value < tol, value, tol, std::move(detail)};
}

SuiteCheck none_of(std::string name, int failures, int total) {
    return {std::move(name), failures == 0, static_cast<double>(failures), 0.0,
            std::to_string(failures) + " of " + std::to_string(total)};
}

class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

private:
    Clock::time_point start_ = Clock::now();
};

MapMatrix random_generic_map(int n, Rng& rng) {
    return MapMatrix(n, BasisTag::frobenius, random_ginibre(n * n, n * n, rng));
}

MapMatrix random_cp_map(int n, int rank, Rng& rng) {
    const std::vector<Matrix> k = random_kraus(n, rank, rng);
    return from_kraus(k);
}

Matrix sigma_z() {
    Matrix z = Matrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return z;
}

// Decomposable dissipator with operator norm of order `scale`.
DecomposableMap random_dissipator(int n, double scale, Rng& rng) {
    const MapMatrix cp = random_cp_map(n, 2, rng) * Complex(scale);
    const MapMatrix cocp = compose_transpose(random_cp_map(n, 1, rng)) * Complex(0.5 * scale);
    return decomposable_certificate(cp, cocp);
}

DecomposableMap covariant_dissipator(int n, double scale, std::uint64_t seed) {
    const RandomCovariantMap r = random_covariant_map(CovariantKind::decomposable, n, seed);
    const Complex s(scale / std::max(1.0, max_abs(r.map.frobenius_coefficients())));
    return decomposable_certificate(r.cp_part * s, r.cocp_part * s);
}

}  // namespace

// --- 1: basis ------------------------------------------------------------------

SuiteResult basis_suite(const SuiteOptions& o) {
    Stopwatch clock;
    SuiteResult r{1, "basis", {}, 0.0};
    Rng rng(o.seed + 1);
    double gram = 0.0, roundtrip = 0.0, hermitian = 0.0;
    const int trials = count(o, 100, 20);
    for (int n : sweep(o, {2, 3, 4, 5, 6, 7, 8})) {
        const FrobeniusBasis b = build_frobenius_basis(n);
        const int d = b.size();
        for (int i = 0; i < d; ++i) {
            const Matrix& fi = b.matrices[static_cast<std::size_t>(i)];
            hermitian = std::max(hermitian, max_abs(fi - fi.adjoint()));
            for (int j = 0; j < d; ++j) {
                const Complex g = (fi.adjoint() * b.matrices[static_cast<std::size_t>(j)]).trace();
                gram = std::max(gram, std::abs(g - Complex(i == j ? 1.0 : 0.0)));
            }
        }
        for (int t = 0; t < trials; ++t) {
            const Matrix a = random_ginibre(n, n, rng);
            roundtrip = std::max(roundtrip, max_abs(reconstruct(expand(a, b), b) - a));
        }
    }
    r.checks.push_back(below("gram_deviation", gram, 1e-12));
    r.checks.push_back(below("roundtrip", roundtrip, 1e-12, std::to_string(trials) + " matrices per n"));
    r.checks.push_back(below("hermitian_elements", hermitian, 1e-12));
    r.seconds = clock.seconds();
    return r;
}

// --- 2: frames -----------------------------------------------------------------

SuiteResult frame_suite(const SuiteOptions& o) {
    Stopwatch clock;
    SuiteResult r{2, "frames", {}, 0.0};
    Rng rng(o.seed + 2);
    double alpha_gap = 0.0, beta_gap = 0.0, unitarity = 0.0, symmetry = 0.0;
    const int samples = count(o, 50, 10);
    for (int n : sweep(o, {2, 3, 4, 5})) {
        const FrobeniusBasis& b = frobenius_basis(n);
        const Matrix id = Matrix::Identity(b.size(), b.size());
        for (int s = 0; s < samples; ++s) {
            const TorusElement g = TorusElement::random(n, rng);
            const Matrix a = alpha_inner_product(g, b);
            const Matrix be = beta_inner_product(g, b);
            alpha_gap = std::max(alpha_gap, max_abs(a - alpha_closed_form(g, b)));
            beta_gap = std::max(beta_gap, max_abs(be - beta_closed_form(g, b)));
            unitarity = std::max({unitarity, max_abs(a * a.adjoint() - id), max_abs(be * be.adjoint() - id)});
            const Matrix rg = beta_diagonal_block(g, b);
            symmetry = std::max(symmetry, max_abs(rg - rg.transpose()));
        }
    }
    r.checks.push_back(below("alpha_closed_form", alpha_gap, 1e-12));
    r.checks.push_back(below("beta_closed_form", beta_gap, 1e-12));
    r.checks.push_back(below("frame_unitarity", unitarity, 1e-12));
    r.checks.push_back(below("r_symmetric", symmetry, 1e-12));
    r.seconds = clock.seconds();
    return r;
}

// --- 3: covariance equivalence -------------------------------------------------

SuiteResult covariance_suite(const SuiteOptions& o) {
    Stopwatch clock;
    SuiteResult r{3, "covariance", {}, 0.0};
    Rng rng(o.seed + 3);
    const std::vector<int> dims = sweep(o, {2, 3, 4});
    const int maps = count(o, 50, 10);
    const int pairs = count(o, 30, 10);
    constexpr double tol = 1e-10;
    int structured_failures = 0, generic_passes = 0, disagreements = 0;
    double worst_structured = 0.0, best_generic = std::numeric_limits<double>::infinity();
    for (int i = 0; i < maps; ++i) {
        const int n = dims[static_cast<std::size_t>(i) % dims.size()];
        const auto kind = static_cast<CovariantKind>(i % 3);
        const MapMatrix m = random_covariant_map(kind, n, o.seed + 1000 + static_cast<std::uint64_t>(i)).map;
        const CovarianceReport rep = covariance_report(m, pairs, tol, o.seed + static_cast<std::uint64_t>(i));
        if (!rep.identity_holds || !rep.commutation_holds) ++structured_failures;
        if (rep.identity_holds != rep.commutation_holds) ++disagreements;
        worst_structured = std::max({worst_structured, rep.identity_residual, rep.commutation_residual});

        const CovarianceReport gen = covariance_report(random_generic_map(n, rng), pairs, tol,
                                                       o.seed + static_cast<std::uint64_t>(i));
        if (gen.identity_holds || gen.commutation_holds) ++generic_passes;
        if (gen.identity_holds != gen.commutation_holds) ++disagreements;
        best_generic = std::min({best_generic, gen.identity_residual, gen.commutation_residual});
    }
    r.checks.push_back(none_of("structured_fail", structured_failures, maps));
    r.checks.push_back(none_of("generic_pass", generic_passes, maps));
    r.checks.push_back(none_of("identity_vs_commutation", disagreements, 2 * maps));
    r.checks.push_back(below("structured_residual", worst_structured, tol));
    {
        std::ostringstream ss;
        ss << "smallest generic residual " << best_generic;
        r.checks.push_back({"generic_separation", best_generic > tol, best_generic, tol, ss.str()});
    }
    r.seconds = clock.seconds();
    return r;
}

// --- 4: projector --------------------------------------------------------------

SuiteResult projector_suite(const SuiteOptions& o) {
    Stopwatch clock;
    SuiteResult r{4, "projector", {}, 0.0};
    Rng rng(o.seed + 4);
    const int maps = count(o, 20, 5);
    double agreement = 0.0, idempotence = 0.0, covariant_residual = 0.0;
    double min_eig = std::numeric_limits<double>::infinity();
    for (int n : sweep(o, {2, 3, 4})) {
        const int nq = std::min(n, kQuadratureMaxDim);
        for (int i = 0; i < maps; ++i) {
            const MapMatrix m = random_generic_map(nq, rng);
            const MapMatrix pq = project_covariant(m, ProjectionMode::quadrature);
            const MapMatrix pc = project_covariant(m, ProjectionMode::closed_form);
            agreement = std::max(agreement, max_abs(pq.frobenius_coefficients() - pc.frobenius_coefficients()));
            for (const MapMatrix* p : {&pq, &pc}) {
                const MapMatrix twice = project_covariant(*p, ProjectionMode::closed_form);
                idempotence = std::max(idempotence, max_abs(twice.frobenius_coefficients() - p->frobenius_coefficients()));
            }
            const MapMatrix pq2 = project_covariant(pq, ProjectionMode::quadrature);
            idempotence = std::max(idempotence, max_abs(pq2.frobenius_coefficients() - pq.frobenius_coefficients()));
            covariant_residual = std::max(covariant_residual, covariance_report(pc, 5, 1e-10).commutation_residual);

            const MapMatrix cp = random_cp_map(nq, 1 + i % (nq * nq), rng);
            for (ProjectionMode mode : {ProjectionMode::quadrature, ProjectionMode::closed_form})
                min_eig = std::min(min_eig, cp_report(project_covariant(cp, mode)).min_eigenvalue);
        }
    }
    r.checks.push_back(below("quadrature_vs_closed", agreement, 1e-11));
    r.checks.push_back(below("idempotence", idempotence, 1e-11));
    r.checks.push_back(below("image_covariant", covariant_residual, 1e-10));
    r.checks.push_back({"cp_preserved", min_eig >= -1e-9, min_eig, -1e-9, "min eigenvalue of projected CP maps"});
    r.seconds = clock.seconds();
    return r;
}

// --- 5: structure theorems -----------------------------------------------------

SuiteResult structure_suite(const SuiteOptions& o) {
    Stopwatch clock;
    SuiteResult r{5, "structure", {}, 0.0};
    Rng rng(o.seed + 5);
    const std::vector<int> dims = sweep(o, {2, 3, 4, 5});
    const int sets = count(o, 200, 40);
    int cp_disagree = 0, cocp_disagree = 0, cp_true = 0, cocp_true = 0;
    for (int i = 0; i < sets; ++i) {
        const int n = dims[static_cast<std::size_t>(i) % dims.size()];

        CovariantBlocks b = random_cp_blocks(n, rng);
        // Half the sets are pushed across the boundary by a random amount.
        if (i % 2 == 1) {
            if (i % 4 == 1) {
                const auto k = static_cast<Eigen::Index>(i / 4) % b.c1.size();
                b.c1(k) -= uniform(rng, 0.0, 2.0) * b.c1(k).real();
            } else {
                Eigen::SelfAdjointEigenSolver<Matrix> eig(b.c3, Eigen::EigenvaluesOnly);
                b.c3 -= uniform(rng, 0.0, 2.0) * eig.eigenvalues()(0) * Matrix::Identity(n, n);
            }
        }
        const bool fast = cp_covariant_test(b);
        cp_true += fast;
        if (fast != is_cp(b.to_map())) ++cp_disagree;

        ConjugateCovariantBlocks cb = random_conjugate_cp_blocks(n, rng);
        if (i % 2 == 1) {
            const auto k = static_cast<Eigen::Index>(i / 4) % cb.c12.size();
            if (i % 4 == 1) {
                const double f = uniform(rng, 0.5, 3.0);
                cb.c12(k) *= f;
                cb.c21(k) *= f;
            } else {
                const auto j = static_cast<Eigen::Index>(i / 4) % cb.a.size();
                cb.a(j) -= uniform(rng, 0.0, 2.0) * cb.a(j).real();
            }
        }
        const bool cfast = cocp_conjugate_test(cb);
        cocp_true += cfast;
        if (cfast != is_cp(cb.to_map())) ++cocp_disagree;
    }
    r.checks.push_back(none_of("cp_covariant_vs_is_cp", cp_disagree, sets));
    r.checks.push_back(none_of("cocp_conjugate_vs_is_cp", cocp_disagree, sets));
    // Both outcomes must actually occur, or the agreement is vacuous.
    r.checks.push_back({"cp_outcomes_mixed", cp_true > 0 && cp_true < sets, static_cast<double>(cp_true), 0.0,
                        std::to_string(cp_true) + " of " + std::to_string(sets) + " CP"});
    r.checks.push_back({"cocp_outcomes_mixed", cocp_true > 0 && cocp_true < sets, static_cast<double>(cocp_true), 0.0,
                        std::to_string(cocp_true) + " of " + std::to_string(sets) + " CP"});

    double c33_gap = 0.0;
    const int draws = count(o, 20, 5);
    for (int n : sweep(o, {2, 3, 4, 5, 6, 7, 8})) {
        const FrobeniusBasis& basis = frobenius_basis(n);
        const int p = basis.pair_count();
        for (int t = 0; t < draws; ++t) {
            Vector a(n);
            for (int k = 0; k < n; ++k) a(k) = normal(rng);
            // Spectral oracle: sum_i a_i r_i r_i^T read straight off the diagonal elements.
            Matrix oracle = Matrix::Zero(n, n);
            for (int i = 0; i < n; ++i) {
                RealVector ri(n);
                for (int k = 0; k < n; ++k) ri(k) = basis.matrices[static_cast<std::size_t>(2 * p + k)](i, i).real();
                oracle += a(i) * (ri * ri.transpose()).cast<Complex>();
            }
            c33_gap = std::max(c33_gap, max_abs(build_c33(a) - oracle));
        }
    }
    r.checks.push_back(below("c33_spectral_oracle", c33_gap, 1e-12));
    r.seconds = clock.seconds();
    return r;
}

// --- 6: exp-commutation --------------------------------------------------------

SuiteResult exp_commutation_suite(const SuiteOptions& o) {
    Stopwatch clock;
    SuiteResult r{6, "exp_commutation", {}, 0.0};
    Rng rng(o.seed + 6);
    const std::vector<int> dims = sweep(o, {2, 3, 4});
    const int pairs = count(o, 500, 60);
    int violations = 0, both = 0, neither = 0;
    for (int i = 0; i < pairs; ++i) {
        const int n = dims[static_cast<std::size_t>(i) % dims.size()];
        // Spectra spread over several multiples of 2 pi in the imaginary direction.
        Vector d(n);
        for (int k = 0; k < n; ++k) d(k) = Complex(uniform(rng, -0.5, 0.5), uniform(rng, -3.0 * kPi, 3.0 * kPi));
        const Matrix v = (i % 2 == 0) ? random_unitary(n, rng) : Matrix(Matrix::Identity(n, n) + 0.3 * random_ginibre(n, n, rng));
        const Matrix a = v * d.asDiagonal() * v.inverse();
        Matrix b;
        if (i % 4 < 2) {
            const Complex c0(normal(rng), normal(rng)), c1(normal(rng), normal(rng)), c2(normal(rng), normal(rng));
            b = c0 * Matrix::Identity(n, n) + c1 * a + 0.1 * c2 * a * a;
        } else {
            b = random_ginibre(n, n, rng);
        }
        // Absolute tolerance scaled to the operand sizes.
        const double scale = std::max(1.0, a.exp().norm()) * std::max(1.0, b.norm()) * std::max(1.0, a.norm());
        try {
            const ExpCommutationResult res = exp_commutation_equiv(a, b, 1e-9 * scale);
            if (res.verdict == ExpCommutation::violation) ++violations;
            if (res.verdict == ExpCommutation::both_commute) ++both;
            if (res.verdict == ExpCommutation::neither) ++neither;
        } catch (const CongruenceViolation&) {
            // Precondition not met; excluded.
            --i;
        }
    }
    r.checks.push_back(none_of("violations", violations, pairs));
    r.checks.push_back({"both_outcomes", both > 0 && neither > 0, static_cast<double>(both), 0.0,
                        std::to_string(both) + " commuting, " + std::to_string(neither) + " non-commuting"});

    Matrix a = Matrix::Zero(2, 2);
    a(1, 1) = Complex(0.0, kTwoPi);
    Matrix b = Matrix::Zero(2, 2);
    b(0, 1) = 1.0;
    bool refused = false;
    try {
        exp_commutation_equiv(a, b);
    } catch (const CongruenceViolation&) {
        refused = true;
    }
    const ExpCommutationResult ce = exp_commutation_equiv(a, b, kStructuralTol, false);
    r.checks.push_back({"counterexample_refused", refused, refused ? 1.0 : 0.0, 0.0, "diag(0, 2 pi i) is congruent"});
    r.checks.push_back(below("counterexample_exp_commutes", ce.exp_commutator, 1e-12));
    r.checks.push_back({"counterexample_plain_nonzero", ce.commutator > 0.5, ce.commutator, 0.5, "|[A, B]|"});
    r.seconds = clock.seconds();
    return r;
}

// --- 7: dilations --------------------------------------------------------------

SuiteResult dilation_suite(const SuiteOptions& o) {
    Stopwatch clock;
    SuiteResult r{7, "dilation", {}, 0.0};
    Rng rng(o.seed + 7);
    const std::vector<int> dims = sweep(o, {2, 3});
    const int maps = count(o, 20, 5);
    double recon = 0.0;
    for (int kind = 0; kind < 3; ++kind) {
        for (int i = 0; i < maps; ++i) {
            const int n = dims[static_cast<std::size_t>(i) % dims.size()];
            const MapMatrix cp = random_cp_map(n, 1 + i % (n * n), rng);
            const MapMatrix cocp = compose_transpose(random_cp_map(n, 1 + (i + 1) % (n * n), rng));
            Dilation d;
            MapMatrix target = cp;
            if (kind == 0) {
                d = stinespring(cp);
            } else if (kind == 1) {
                d = costinespring(cocp);
                target = cocp;
            } else {
                d = jordan_dilation(cp, cocp);
                target = cp + cocp;
            }
            for (const Matrix& e : canonical_basis(n)) recon = std::max(recon, max_abs(d.reconstruct(e) - covmaps::apply(target, e)));
        }
    }
    r.checks.push_back(below("reconstruction", recon, 1e-10));

    double intertwine = 0.0;
    const int covariant_inputs = count(o, 10, 3);
    for (int kind = 0; kind < 3; ++kind) {
        for (int i = 0; i < covariant_inputs; ++i) {
            const int n = dims[static_cast<std::size_t>(i) % dims.size()];
            const RandomCovariantMap m = random_covariant_map(static_cast<CovariantKind>(kind), n,
                                                              o.seed + 7000 + static_cast<std::uint64_t>(10 * i + kind));
            Dilation d = kind == 0 ? stinespring(m.map)
                                   : kind == 1 ? costinespring(m.map) : jordan_dilation(m.cp_part, m.cocp_part);
            try {
                const CovarianceIntertwiner w = covariance_intertwiner(d, count(o, 10, 4), 1.0);
                intertwine = std::max({intertwine, w.intertwining_residual, w.representation_residual, w.unitarity_residual});
            } catch (const Error&) {
                intertwine = std::numeric_limits<double>::infinity();
            }
        }
    }
    r.checks.push_back(below("intertwiner_residual", intertwine, kIntertwinerTol));

    int missed = 0;
    const int controls = count(o, 10, 3);
    for (int i = 0; i < controls; ++i) {
        const int n = dims[static_cast<std::size_t>(i) % dims.size()];
        const Dilation d = stinespring(random_cp_map(n, 2, rng));
        try {
            covariance_intertwiner(d, 5);
            ++missed;
        } catch (const NoIntertwinerFound&) {
        }
    }
    r.checks.push_back(none_of("controls_without_refusal", missed, controls));
    r.seconds = clock.seconds();
    return r;
}

// --- 8: dynamics ---------------------------------------------------------------

SuiteResult dynamics_suite(const SuiteOptions& o) {
    Stopwatch clock;
    SuiteResult r{8, "dynamics", {}, 0.0};
    Rng rng(o.seed + 8);

    // Pure dephasing: rho_01(t) = e^{-2t} / 2 from rho0 = |+><+|.
    {
        const Generator gen = build_generator(Matrix::Zero(2, 2),
                                              decomposable_certificate(ad_map(sigma_z()), MapMatrix::zero(2)));
        const DensityMatrix rho0(Matrix::Constant(2, 2, Complex(0.5)));
        const Evolution ev = evolve(gen, 2.0, 1e-3, rho0);
        double gap = 0.0;
        for (double t : {0.5, 1.0, 2.0}) {
            const Matrix& rho = ev.states[ev.family.index_of(t)];
            gap = std::max(gap, std::abs(rho(0, 1) - Complex(0.5 * std::exp(-2.0 * t))));
        }
        r.checks.push_back(below("dephasing_closed_form", gap, 1e-6));
        double witness = std::numeric_limits<double>::infinity(), bound = kDivisibilityTol;
        bool passes = true;
        for (std::size_t k : {std::size_t{0}, std::size_t{999}, std::size_t{1999}}) {
            const DivisibilityWitness w = divisibility_witness(gen, ev.family, k);
            passes = passes && w.passes;
            if (w.min_eigenvalue < witness) {
                witness = w.min_eigenvalue;
                bound = w.tolerance;
            }
        }
        r.checks.push_back({"dephasing_divisibility", passes, witness, -bound,
                            "min eigenvalue of c(V - h phi_cocp) against -(tol + step remainder)"});
    }

    // Trace drift over T = 5 with h = 1e-3.
    {
        double drift = 0.0;
        for (int n : sweep(o, {2, 3, 4})) {
            const Generator gen = build_generator(random_hermitian(n, rng), random_dissipator(n, 0.5, rng));
            const Evolution ev = evolve(gen, o.reduced ? 1.0 : 5.0, 1e-3, DensityMatrix(random_density(n, rng)));
            drift = std::max(drift, ev.family.trace_residual());
            for (double t : ev.trace_residuals) drift = std::max(drift, t);
        }
        r.checks.push_back(below("trace_drift", drift, 1e-8));
    }

    // Order: terminal error at h and h/2 against a run at h/8.
    {
        const int n = o.n.value_or(3);
        const Generator gen = build_generator(random_hermitian(n, rng) * 0.5, random_dissipator(n, 0.3, rng));
        const DensityMatrix rho0(random_density(n, rng));
        const double h = 0.1;
        auto terminal = [&](double step) { return evolve(gen, 1.0, step, rho0).family.superoperators.back(); };
        const Matrix reference = terminal(h / 8.0);
        const double e1 = (terminal(h) - reference).norm();
        const double e2 = (terminal(h / 2.0) - reference).norm();
        const double ratio = e1 / e2;
        std::ostringstream ss;
        ss << "errors " << e1 << ", " << e2;
        r.checks.push_back({"rk4_order_ratio", std::abs(ratio - 16.0) <= 0.2 * 16.0, ratio, 3.2, ss.str()});
    }

    // Generator battery: half structured covariant, half perturbed.
    {
        const std::vector<int> dims = sweep(o, {2, 3});
        const int battery = count(o, 20, 6);
        int mismatches = 0, semigroup_mismatches = 0, covariant_count = 0;
        double law = 0.0;
        for (int i = 0; i < battery; ++i) {
            const int n = dims[static_cast<std::size_t>(i) % dims.size()];
            RealVector energies(n);
            for (int k = 0; k < n; ++k) energies(k) = normal(rng);
            Matrix h = energies.cast<Complex>().asDiagonal();
            DecomposableMap phi = covariant_dissipator(n, 0.5, o.seed + 8000 + static_cast<std::uint64_t>(i));
            if (i % 2 == 1) {
                if (i % 4 == 1) {
                    h(0, 1) += 0.3;
                    h(1, 0) += 0.3;
                } else {
                    phi = decomposable_certificate(phi.cp_part + random_cp_map(n, 1, rng) * Complex(0.2), phi.cocp_part);
                }
            }
            const Generator gen = build_generator(h, phi);
            const Evolution ev = evolve(gen, 1.0, 1e-2, DensityMatrix(random_density(n, rng)));
            const bool structural = generator_covariance_report(gen).covariant;
            const bool family = dynamics_covariance_check(ev.family).covariant;
            const bool propagators = propagator_covariance_check(ev.family).covariant;
            covariant_count += structural;
            if (structural != family || family != propagators) ++mismatches;
            const SemigroupReport sg = semigroup_structure_check(gen, count(o, 10, 3));
            if (!sg.agree || sg.structural_covariant != structural) ++semigroup_mismatches;

            // Lambda_{t+s} = Lambda_t o Lambda_s on the grid.
            const auto& lam = ev.family.superoperators;
            for (std::size_t s : {std::size_t{10}, std::size_t{37}})
                for (std::size_t t : {std::size_t{25}, std::size_t{63}})
                    law = std::max(law, max_abs(lam[t + s] - lam[t] * lam[s]));
        }
        r.checks.push_back(none_of("battery_verdict_mismatch", mismatches, battery));
        r.checks.push_back(none_of("semigroup_verdict_mismatch", semigroup_mismatches, battery));
        r.checks.push_back({"battery_mixed", covariant_count == (battery + 1) / 2, static_cast<double>(covariant_count),
                            0.0, std::to_string(covariant_count) + " covariant of " + std::to_string(battery)});
        r.checks.push_back(below("semigroup_law", law, 1e-8));
    }
    r.seconds = clock.seconds();
    return r;
}

std::vector<SuiteResult> run_suites(const SuiteOptions& opts) {
    return {basis_suite(opts),           frame_suite(opts),      covariance_suite(opts),
            projector_suite(opts),       structure_suite(opts),  exp_commutation_suite(opts),
            dilation_suite(opts),        dynamics_suite(opts)};
}

}  // namespace covmaps

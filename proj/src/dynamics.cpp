#include "covmaps/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "covmaps/kernels.hpp"

namespace covmaps {

namespace {

double operator_norm(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

double condition_number(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    return smin == 0.0 ? std::numeric_limits<double>::infinity() : sv(0) / smin;
}

Matrix vec_identity_row(int n) {
    const Matrix id = Matrix::Identity(n, n);
    return Eigen::Map<const Vector>(id.data(), n * n).transpose();
}

void validate_generator_at(const Generator& gen, double t) {
    const Matrix h = gen.hamiltonian(t);
    if (h.rows() != gen.n() || h.cols() != gen.n())
        throw DimensionMismatch("generator: Hamiltonian has wrong size");
    if (max_abs(h - h.adjoint()) > 1e-13) throw PreconditionFailure("generator: Hamiltonian is not Hermitian");
    const DecomposableMap phi = gen.dissipator(t);
    if (phi.sum.n() != gen.n()) throw DimensionMismatch("generator: dissipator acts on the wrong dimension");
    // Re-validates the certificate the callback handed back.
    decomposable_certificate(phi.cp_part, phi.cocp_part);
}

}  // namespace

Matrix ad_superoperator(const Matrix& u) { return kron(u.conjugate(), u); }

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 2) throw InvalidDimension("density matrix must be square, n >= 2");
    if (max_abs(rho_ - rho_.adjoint()) > 1e-13) throw PreconditionFailure("density matrix is not Hermitian");
    if (std::abs(rho_.trace() - Complex(1.0)) > 1e-12) throw PreconditionFailure("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-12) throw PreconditionFailure("density matrix is not positive semidefinite");
}

// --- generator -----------------------------------------------------------------

Generator::Generator(int n, HamiltonianFn hamiltonian, DissipatorFn dissipator, bool time_dependent)
    : n_(n), hamiltonian_(std::move(hamiltonian)), dissipator_(std::move(dissipator)), time_dependent_(time_dependent) {
    require_dimension(n);
    validate_generator_at(*this, 0.0);
    if (!time_dependent_) cached_ = build_superoperator(0.0);
}

Matrix Generator::anchor(double t) const {
    return covmaps::apply(dual_map(dissipator(t).sum), Matrix::Identity(n_, n_));
}

Matrix Generator::build_superoperator(double t) const {
    const Matrix h = hamiltonian(t);
    const DecomposableMap phi = dissipator(t);
    const Matrix k = covmaps::apply(dual_map(phi.sum), Matrix::Identity(n_, n_));
    const Matrix id = Matrix::Identity(n_, n_);
    // vec(X rho) = (I kron X) vec rho, vec(rho X) = (X^T kron I) vec rho
    Matrix l = -kI * (kron(id, h) - kron(h.transpose(), id));
    l += to_superoperator(phi.sum);
    l -= 0.5 * (kron(id, k) + kron(k.transpose(), id));
    return l;
}

Matrix Generator::superoperator(double t) const { return time_dependent_ ? build_superoperator(t) : cached_; }

Matrix Generator::apply(double t, const Matrix& rho) const {
    if (rho.rows() != n_ || rho.cols() != n_) throw DimensionMismatch("Generator::apply: wrong state size");
    const Vector out = superoperator(t) * Eigen::Map<const Vector>(rho.data(), n_ * n_);
    return Eigen::Map<const Matrix>(out.data(), n_, n_);
}

Generator build_generator(const Matrix& h, const DecomposableMap& phi) {
    const int n = static_cast<int>(h.rows());
    return Generator(
        n, [h](double) { return h; }, [phi](double) { return phi; }, false);
}

Generator build_generator(int n, Generator::HamiltonianFn h, Generator::DissipatorFn phi) {
    return Generator(n, std::move(h), std::move(phi), true);
}

// --- evolution -----------------------------------------------------------------

MapMatrix EvolutionFamily::map(std::size_t k) const { return from_superoperator(superoperators.at(k), n); }

std::size_t EvolutionFamily::index_of(double t) const {
    const double slack = 1e-6 * step;
    const auto it = std::lower_bound(times.begin(), times.end(), t - slack);
    if (it == times.end() || std::abs(*it - t) > slack)
        throw InputError("time " + std::to_string(t) + " is not a grid node of the evolution family");
    return static_cast<std::size_t>(it - times.begin());
}

double EvolutionFamily::trace_residual() const {
    const Matrix row = vec_identity_row(n);
    double worst = 0.0;
    for (const Matrix& s : superoperators) worst = std::max(worst, max_abs(row * s - row));
    return worst;
}

Evolution evolve(const Generator& gen, double horizon, double step, const DensityMatrix& rho0,
                 const EvolveOptions& options) {
    if (!(step > 0.0)) throw InputError("evolve: step must be positive");
    if (!(horizon >= step)) throw InputError("evolve: horizon must be at least one step");
    if (rho0.n() != gen.n()) throw DimensionMismatch("evolve: initial state has wrong size");
    if (options.record_every == 0) throw InputError("evolve: record_every must be positive");

    const int n = gen.n();
    const int d = n * n;
    const auto steps = static_cast<std::size_t>(std::llround(horizon / step));
    const Vector rho_vec = Eigen::Map<const Vector>(rho0.matrix().data(), d);
    const Complex trace0 = rho0.matrix().trace();

    Evolution out;
    out.family.n = n;
    out.family.step = step;

    Matrix lambda = Matrix::Identity(d, d);
    auto record = [&](double t) {
        out.family.times.push_back(t);
        out.family.superoperators.push_back(lambda);
        const Vector r = lambda * rho_vec;
        Matrix rho = Eigen::Map<const Matrix>(r.data(), n, n);
        out.trace_residuals.push_back(std::abs(rho.trace() - trace0));
        out.states.push_back(std::move(rho));
    };
    auto check_regular = [&](const Matrix& l) {
        const double norm = operator_norm(l);
        out.max_generator_norm = std::max(out.max_generator_norm, norm);
        if (norm > options.regularity_bound) out.regular = false;
    };

    if (!gen.time_dependent()) check_regular(gen.superoperator(0.0));
    record(0.0);

    Matrix k1, k2, k3, k4, stage(d, d), next(d, d);
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * step;
        const Matrix l0 = gen.superoperator(t);
        const Matrix lh = gen.superoperator(t + 0.5 * step);
        const Matrix l1 = gen.superoperator(t + step);
        if (gen.time_dependent()) check_regular(l0);

        kernels::multiply_into(l0, lambda, k1);
        stage = lambda;
        kernels::axpy(0.5 * step, k1, stage);
        kernels::multiply_into(lh, stage, k2);
        stage = lambda;
        kernels::axpy(0.5 * step, k2, stage);
        kernels::multiply_into(lh, stage, k3);
        stage = lambda;
        kernels::axpy(step, k3, stage);
        kernels::multiply_into(l1, stage, k4);

        next = lambda;
        kernels::axpy(step / 6.0, k1, next);
        kernels::axpy(step / 3.0, k2, next);
        kernels::axpy(step / 3.0, k3, next);
        kernels::axpy(step / 6.0, k4, next);
        lambda.swap(next);

        if (!lambda.allFinite() || max_abs(lambda) > options.blowup_bound)
            throw IntegrationError("evolve: propagator norm blew up at t=" + std::to_string(t + step) +
                                   "; reduce the step or check the generator");
        const bool last = i + 1 == steps;
        if (last || (i + 1) % options.record_every == 0) record(static_cast<double>(i + 1) * step);
    }
    if (gen.time_dependent()) check_regular(gen.superoperator(static_cast<double>(steps) * step));
    return out;
}

Matrix propagator_superoperator(const EvolutionFamily& fam, std::size_t t_index, std::size_t s_index) {
    if (s_index > t_index) throw InputError("propagator: requires s <= t");
    const Matrix& ls = fam.superoperators.at(s_index);
    const Matrix& lt = fam.superoperators.at(t_index);
    if (s_index == t_index) return Matrix::Identity(ls.rows(), ls.cols());
    const double cond = condition_number(ls);
    if (!(cond < kPropagatorConditionLimit))
        throw IllConditioned("propagator: Lambda_s is ill-conditioned (condition number " + std::to_string(cond) + ")",
                             cond);
    // V = Lambda_t Lambda_s^-1  <=>  Lambda_s^T V^T = Lambda_t^T
    const Matrix vt = ls.transpose().partialPivLu().solve(lt.transpose());
    return vt.transpose();
}

MapMatrix propagator(const EvolutionFamily& fam, double t, double s) {
    return from_superoperator(propagator_superoperator(fam, fam.index_of(t), fam.index_of(s)), fam.n);
}

// --- covariance of dynamics ----------------------------------------------------

GeneratorCovarianceReport generator_covariance_report(const Generator& gen, int samples, double tol,
                                                      std::uint64_t seed, const std::vector<double>& times) {
    GeneratorCovarianceReport out;
    out.dissipator.covariant = true;
    out.dissipator.identity_holds = true;
    out.dissipator.commutation_holds = true;
    Rng rng(seed);
    const int n = gen.n();
    for (double t : times) {
        const Matrix h = gen.hamiltonian(t);
        const Matrix l = gen.superoperator(t);
        for (int s = 0; s < samples; ++s) {
            const TorusElement g = TorusElement::random(n, rng);
            const Matrix u = diag_unitary(g);
            out.hamiltonian_commutator = std::max(out.hamiltonian_commutator, max_abs(commutator(h, u)));
            out.generator_commutator = std::max(out.generator_commutator, max_abs(commutator(l, ad_superoperator(u))));
        }
        const CovarianceReport r = covariance_report(gen.dissipator(t).sum, samples, tol, seed);
        out.dissipator.identity_residual = std::max(out.dissipator.identity_residual, r.identity_residual);
        out.dissipator.commutation_residual = std::max(out.dissipator.commutation_residual, r.commutation_residual);
        out.dissipator.identity_holds = out.dissipator.identity_holds && r.identity_holds;
        out.dissipator.commutation_holds = out.dissipator.commutation_holds && r.commutation_holds;
        out.dissipator.covariant = out.dissipator.covariant && r.covariant;
    }
    out.hamiltonian_in_commutant = out.hamiltonian_commutator <= tol;
    out.covariant = out.hamiltonian_in_commutant && out.dissipator.covariant;
    return out;
}

FamilyCovarianceReport dynamics_covariance_check(const EvolutionFamily& fam, int samples, double tol,
                                                 std::uint64_t seed) {
    FamilyCovarianceReport out;
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, fam.times.size() - 1);
    for (int s = 0; s < samples; ++s) {
        // Always include the final node, where deviations have had longest to grow.
        const std::size_t k = s == 0 ? fam.times.size() - 1 : pick(rng);
        const Matrix ad = ad_superoperator(diag_unitary(TorusElement::random(fam.n, rng)));
        const Matrix& lambda = fam.superoperators[k];
        out.max_residual = std::max(out.max_residual, max_abs(lambda * ad - ad * lambda));
        ++out.checked;
    }
    out.covariant = out.max_residual <= tol;
    return out;
}

FamilyCovarianceReport propagator_covariance_check(const EvolutionFamily& fam, int samples, double tol,
                                                   std::uint64_t seed) {
    FamilyCovarianceReport out;
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, fam.times.size() - 1);
    for (int s = 0; s < samples; ++s) {
        std::size_t a = pick(rng), b = pick(rng);
        if (s == 0) {
            a = 0;
            b = fam.times.size() - 1;
        }
        const std::size_t lo = std::min(a, b), hi = std::max(a, b);
        Matrix v;
        try {
            v = propagator_superoperator(fam, hi, lo);
        } catch (const IllConditioned&) {
            ++out.skipped;
            continue;
        }
        const Matrix ad = ad_superoperator(diag_unitary(TorusElement::random(fam.n, rng)));
        out.max_residual = std::max(out.max_residual, max_abs(v * ad - ad * v));
        ++out.checked;
    }
    out.covariant = out.checked > 0 && out.max_residual <= tol;
    return out;
}

SemigroupReport semigroup_structure_check(const Generator& gen, int samples, double tol, std::uint64_t seed,
                                          double t_max) {
    if (gen.time_dependent()) throw PreconditionFailure("semigroup_structure_check: generator must be constant");
    SemigroupReport out;
    Rng rng(seed);
    const Matrix l = gen.superoperator(0.0);
    for (int s = 0; s < samples; ++s) {
        const double t = s == 0 ? t_max : uniform(rng, 0.0, t_max);
        const Matrix e = (t * l).exp();
        const Matrix ad = ad_superoperator(diag_unitary(TorusElement::random(gen.n(), rng)));
        out.exponential_residual = std::max(out.exponential_residual, max_abs(e * ad - ad * e));
    }
    out.exponential_covariant = out.exponential_residual <= tol;
    out.structural_covariant = generator_covariance_report(gen, samples, kStructuralTol, seed).covariant;
    out.agree = out.exponential_covariant == out.structural_covariant;
    return out;
}

DivisibilityWitness divisibility_witness(const Generator& gen, const EvolutionFamily& fam, std::size_t k,
                                         double tol) {
    if (k + 1 >= fam.times.size()) throw InputError("divisibility_witness: no grid step after index " + std::to_string(k));
    const double t = fam.times[k];
    const double h = fam.times[k + 1] - t;
    const Matrix step = propagator_superoperator(fam, k + 1, k);
    const Matrix first_order = Matrix::Identity(step.rows(), step.cols()) + h * gen.superoperator(t);
    const MapMatrix rest = from_superoperator(step, fam.n) - gen.dissipator(t).cocp_part * Complex(h);
    DivisibilityWitness out;
    out.min_eigenvalue = cp_report(rest, tol).min_eigenvalue;
    out.remainder = (step - first_order).norm();
    out.tolerance = tol + out.remainder;
    out.passes = out.min_eigenvalue >= -out.tolerance;
    return out;
}

}  // namespace covmaps

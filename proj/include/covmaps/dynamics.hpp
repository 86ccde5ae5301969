#pragma once
// Time-local master equations dLambda/dt = L_t o Lambda_t with generators
//   L_t(rho) = -i[H_t, rho] + phi_t(rho) - 1/2 {phi_t*(I), rho}
// where phi_t is decomposable. Everything runs in the Schroedinger picture;
// the Heisenberg picture is dual_map of the same objects.

#include <cstdint>
#include <functional>
#include <vector>

#include "covmaps/covariance.hpp"
#include "covmaps/linmap.hpp"
#include "covmaps/types.hpp"

namespace covmaps {

/// Validated density operator: Hermitian, PSD and unit trace.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix rho);
    const Matrix& matrix() const { return rho_; }
    int n() const { return static_cast<int>(rho_.rows()); }

private:
    Matrix rho_;
};

class Generator {
public:
    using HamiltonianFn = std::function<Matrix(double)>;
    using DissipatorFn = std::function<DecomposableMap(double)>;

    Generator(int n, HamiltonianFn hamiltonian, DissipatorFn dissipator, bool time_dependent);

    int n() const { return n_; }
    bool time_dependent() const { return time_dependent_; }

    Matrix hamiltonian(double t) const { return hamiltonian_(t); }
    DecomposableMap dissipator(double t) const { return dissipator_(t); }
    /// phi_t*(I), the anticommutator anchor that makes L_t trace-annihilating.
    Matrix anchor(double t) const;
    /// Column-stacking superoperator of L_t.
    Matrix superoperator(double t) const;
    Matrix apply(double t, const Matrix& rho) const;

private:
    Matrix build_superoperator(double t) const;

    int n_;
    HamiltonianFn hamiltonian_;
    DissipatorFn dissipator_;
    bool time_dependent_;
    Matrix cached_;  // constant generators only
};

/// Constant generator. Throws PreconditionFailure for non-Hermitian H.
Generator build_generator(const Matrix& h, const DecomposableMap& phi);
/// Time-dependent generator from callbacks, validated at t = 0.
Generator build_generator(int n, Generator::HamiltonianFn h, Generator::DissipatorFn phi);

struct EvolutionFamily {
    int n = 0;
    double step = 0.0;
    std::vector<double> times;
    std::vector<Matrix> superoperators;  // Lambda_{t_k}, column-stacking convention

    MapMatrix map(std::size_t k) const;
    /// Grid index of time t; throws InputError if t is off the grid.
    std::size_t index_of(double t) const;
    /// max_k max |tr(Lambda_k(X)) - tr(X)| over matrix units X.
    double trace_residual() const;
};

struct EvolveOptions {
    std::size_t record_every = 1;
    double regularity_bound = 1e6;  // flag generators whose sampled norm exceeds this
    double blowup_bound = 1e12;     // abort if ||Lambda_t|| exceeds this
};

struct Evolution {
    EvolutionFamily family;
    std::vector<Matrix> states;          // rho(t_k) at recorded nodes
    std::vector<double> trace_residuals; // |tr rho(t_k) - tr rho0|
    double max_generator_norm = 0.0;
    bool regular = true;
};

/// Fixed-step classical RK4 on the superoperator ODE. The number of steps is
/// round(T / h); recorded grid nodes are every `record_every` steps plus T.
Evolution evolve(const Generator& gen, double horizon, double step, const DensityMatrix& rho0,
                 const EvolveOptions& options = {});

inline constexpr double kPropagatorConditionLimit = 1e8;

/// V_{t,s} = Lambda_t o Lambda_s^-1; throws IllConditioned when cond(Lambda_s)
/// reaches kPropagatorConditionLimit.
MapMatrix propagator(const EvolutionFamily& fam, double t, double s);
Matrix propagator_superoperator(const EvolutionFamily& fam, std::size_t t_index, std::size_t s_index);

/// Superoperator of Ad_U, vec(U A U^dagger) = (conj U kron U) vec A.
Matrix ad_superoperator(const Matrix& u);

struct GeneratorCovarianceReport {
    double hamiltonian_commutator = 0.0;  // max ||[H_t, U(g)]||
    CovarianceReport dissipator;          // covariance of phi_t
    double generator_commutator = 0.0;    // max ||[L_t, Ad_U(g)]|| for reference
    bool hamiltonian_in_commutant = false;
    bool covariant = false;
};

GeneratorCovarianceReport generator_covariance_report(const Generator& gen, int samples = 30,
                                                      double tol = kStructuralTol, std::uint64_t seed = 0x5eed,
                                                      const std::vector<double>& times = {0.0});

struct FamilyCovarianceReport {
    double max_residual = 0.0;
    std::size_t checked = 0;
    std::size_t skipped = 0;  // ill-conditioned propagators (propagator check only)
    bool covariant = false;
};

/// Samples (g, t) and tests Lambda_t o Ad_U(g) = Ad_U(g) o Lambda_t.
FamilyCovarianceReport dynamics_covariance_check(const EvolutionFamily& fam, int samples = 30,
                                                 double tol = 1e-8, std::uint64_t seed = 0x5eed);
/// Samples (g, s <= t) and tests [V_{t,s}, Ad_U(g)] = 0.
FamilyCovarianceReport propagator_covariance_check(const EvolutionFamily& fam, int samples = 30,
                                                   double tol = 1e-8, std::uint64_t seed = 0x5eed);

struct SemigroupReport {
    double exponential_residual = 0.0;  // max ||[e^{tL}, Ad_U(g)]||
    bool exponential_covariant = false;
    bool structural_covariant = false;
    bool agree = false;
};

/// Constant generators only (PreconditionFailure otherwise). Exponentials by
/// scaling and squaring at sampled t in (0, t_max].
SemigroupReport semigroup_structure_check(const Generator& gen, int samples = 10, double tol = 1e-8,
                                          std::uint64_t seed = 0x5eed, double t_max = 1.0);

struct DivisibilityWitness {
    double min_eigenvalue = 0.0;  // of c(V_{t+h,t} - h phi_cocp(t))
    double remainder = 0.0;       // ||V_{t+h,t} - (I + h L_t)||_F, the beyond-first-order part
    double tolerance = 0.0;       // tol + remainder
    bool passes = false;
};

inline constexpr double kDivisibilityTol = 1e-6;

/// First-order D-divisibility proxy on one grid step: the one-step propagator
/// minus h times the coCP summand must be CP up to tol plus the Frobenius norm
/// of the step's second- and higher-order remainder (a Weyl bound, since the
/// Choi reshuffle preserves the Frobenius norm).
DivisibilityWitness divisibility_witness(const Generator& gen, const EvolutionFamily& fam, std::size_t k,
                                         double tol = kDivisibilityTol);

}  // namespace covmaps

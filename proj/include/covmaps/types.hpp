#pragma once
// Shared numeric types, tolerances and error classes.

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace covmaps {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Exact-algebra checks (basis identities, frame closed forms).
inline constexpr double kExactTol = 1e-12;
// Structural checks (covariance residuals, block patterns).
inline constexpr double kStructuralTol = 1e-10;
// Eigenvalue sign checks (CP / coCP membership).
inline constexpr double kEigenTol = 1e-9;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// An operation's stated precondition does not hold for its input.
class PreconditionFailure : public Error {
public:
    using Error::Error;
};

class CertificateViolation : public Error {
public:
    using Error::Error;
};

class InternalConsistency : public Error {
public:
    using Error::Error;
};

class CongruenceViolation : public Error {
public:
    using Error::Error;
};

class NoIntertwinerFound : public Error {
public:
    using Error::Error;
};

class IntegrationError : public Error {
public:
    using Error::Error;
};

class IllConditioned : public Error {
public:
    IllConditioned(const std::string& what, double condition)
        : Error(what), condition_(condition) {}
    double condition() const { return condition_; }

private:
    double condition_;
};

// Malformed user input (JSON files, CLI values).
class InputError : public Error {
public:
    using Error::Error;
};

inline void require_dimension(int n) {
    if (n < 2) throw InvalidDimension("dimension must be >= 2, got " + std::to_string(n));
}

// Largest entry modulus; the default norm for tolerance comparisons.
inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);

}  // namespace covmaps

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace realform {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Residual policy shared by every operation: a relative bound scaled by the
/// problem's natural norm plus an absolute floor.
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  double threshold(double scale) const { return rel * scale + abs; }
};

/// Signature (p,q) of a nondegenerate Hermitian or real symmetric form.
struct Signature {
  int positive = 0;
  int negative = 0;

  int dimension() const { return positive + negative; }
  bool operator==(const Signature&) const = default;
};

/// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent sizes or parameters (bad dimensions, odd symplectic size...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented operation contract (non-Hermitian, non-skew...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A form that must be nondegenerate has a near-zero eigenvalue.
class DegenerateFormError : public Error {
 public:
  using Error::Error;
};

/// Representation is not semi-simple where semi-simplicity is required.
class SemisimplicityError : public Error {
 public:
  using Error::Error;
};

/// Precondition of a classification entry point not met
/// (not irreducible, not phi-fixed, wrong ambient kind).
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalue pairing required by a structured decomposition failed.
class PairingError : public Error {
 public:
  using Error::Error;
};

/// All admissible scalar choices produced a near-singular factor.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// A rank decision fell inside the declared indeterminate band.
class IndeterminateError : public Error {
 public:
  using Error::Error;
};

/// A branch construction exceeded its residual budget.
class NumericalFailureError : public Error {
 public:
  using Error::Error;
};

/// Document violates the JSON schema; carries a JSON-pointer path.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string pointer)
      : Error(message + " (at " + pointer + ")"), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// Document parses but a matrix fails group membership.
class ValidationError : public Error {
 public:
  using Error::Error;
};

inline double frobenius(const CMatrix& m) { return m.norm(); }

/// Least-squares scalar fit: c minimizing ||A - c B||_F.
inline Complex fit_scalar(const CMatrix& a, const CMatrix& b) {
  const Complex denom = (b.adjoint() * b).trace();
  if (std::abs(denom) == 0.0) return Complex(0, 0);
  return (b.adjoint() * a).trace() / denom;
}

inline bool has_finite_entries(const CMatrix& m) {
  return m.allFinite();
}

}  // namespace realform

// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace phcenter {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Matrix dimensions do not match the operation's contract.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be Hermitian deviates beyond tolerance.
class NotHermitianError : public Error {
 public:
  using Error::Error;
};

/// A shifted solve (sI - A)Z = B left a residual above tolerance,
/// i.e. s is (numerically) an eigenvalue of A.
class SingularShiftError : public Error {
 public:
  using Error::Error;
};

/// S = D + D^H is singular or indefinite where positive definiteness is required.
class SingularSError : public Error {
 public:
  using Error::Error;
};

/// The Hamiltonian matrix has eigenvalues on (or too close to) the imaginary axis.
class ImaginaryAxisEigenvalueError : public Error {
 public:
  using Error::Error;
};

/// Invariant-subspace basis block U1 is too ill conditioned to solve for X.
class SubspaceExtractionError : public Error {
 public:
  using Error::Error;
};

/// A matrix required to be positive semidefinite has a significantly negative eigenvalue.
class NotPsdError : public Error {
 public:
  using Error::Error;
};

/// The model fails a strict-passivity precondition.
class NotStrictlyPassiveError : public Error {
 public:
  using Error::Error;
};

/// The point is outside the open feasible set of the barrier.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A certificate X required to be positive definite is not.
class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

/// Loewner ordering 0 < X- <= X+ violated.
class OrderingError : public Error {
 public:
  using Error::Error;
};

/// A is not asymptotically stable.
class UnstableError : public Error {
 public:
  using Error::Error;
};

/// Model/report document could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Requested structural property (minimality, full port rank) does not hold.
class ModelStructureError : public Error {
 public:
  using Error::Error;
};

}  // namespace phcenter

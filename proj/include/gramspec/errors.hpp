#pragma once

#include <stdexcept>
#include <string>

namespace gramspec {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or non-square shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input exceeds a hard size cap of a dense algorithm.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its admissible range (negative horizon, non-symmetric
/// initial condition, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Request outside the supported scope of a method (e.g. nonzero initial
/// condition where only the zero-initial-condition form is derived).
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// System shape unsupported by the requested path (e.g. multi-input system
/// handed to the single-input companion transformation).
class UnsupportedShapeError : public Error {
 public:
  using Error::Error;
};

/// Repeated eigenvalues detected on a path that requires a simple spectrum.
class MultipleSpectrumError : public Error {
 public:
  using Error::Error;
};

/// An eigenvalue product lambda_i * conj(lambda_j) falls on (or numerically
/// at) 1, so the Stein equation has no unique solution.
class SolvabilityError : public Error {
 public:
  SolvabilityError(const std::string& what, int i, int j, double margin)
      : Error(what), i(i), j(j), margin(margin) {}
  int i = -1;
  int j = -1;
  double margin = 0.0;
};

/// Division by a (numerically) zero quantity: zero eigenvalue, singular
/// operator, and the like.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Controllability matrix numerically rank deficient.
class ControllabilityError : public Error {
 public:
  ControllabilityError(const std::string& what, int numeric_rank)
      : Error(what), numeric_rank(numeric_rank) {}
  int numeric_rank = 0;
};

/// Declared multiplicity structure inconsistent with the matrix at hand
/// (singular generalized-eigenvector matrix, broken chain, ...).
class DefectiveInputError : public Error {
 public:
  using Error::Error;
};

/// Two decompositions that must share a spectrum/realization do not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Finite-horizon inverse requested at a horizon where the Gramian is still
/// singular.
class HorizonError : public Error {
 public:
  using Error::Error;
};

}  // namespace gramspec

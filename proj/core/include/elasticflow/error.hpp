#pragma once

#include <stdexcept>
#include <string>

namespace elasticflow {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (non-finite input,
/// negative slope for H, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Value outside the representable range, e.g. |y| >= c0/2 for G^{-1}.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter combination (nonpositive integer c in 2F1, bad config).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A series or iteration failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Grid mismatch or wrong array length.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation is violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace elasticflow

#pragma once

#include <stdexcept>
#include <string>

namespace ssnreg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or input violates its documented invariant.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Cholesky factorization of the reduced Newton block failed, even after
/// the ridge lift. Usually means the sparse-eigenvalue condition
/// kappa_-(|A|) > 1/gamma (MCP) or > 1/(gamma - 1) (SCAD) is violated.
class SingularReducedSystem : public Error {
 public:
  using Error::Error;
};

/// The active set grew past the identifiability guard min(n, 2 floor(n / log p)).
class OversizedActiveSet : public Error {
 public:
  using Error::Error;
};

/// X^T y is identically zero, so no lambda grid can be anchored.
class EmptySignal : public Error {
 public:
  using Error::Error;
};

/// Every path point has an empty or over-cap support; VSC has nothing to vote on.
class NoNonzeroSolution : public Error {
 public:
  using Error::Error;
};

}  // namespace ssnreg

#pragma once

#include <stdexcept>
#include <string>

namespace newtonflow {

/// Base class for all recoverable errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A pivot of the LU factorization is zero (or below the 1e-300 floor).
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// An input matrix or vector contains NaN or Inf entries.
class NonFiniteInputError : public Error {
public:
    using Error::Error;
};

/// Operand dimensions do not agree.
class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

/// A residual evaluation produced NaN or Inf components.
class NonFiniteResidualError : public Error {
public:
    using Error::Error;
};

/// A Jacobian evaluation produced NaN or Inf entries.
class NonFiniteJacobianError : public Error {
public:
    using Error::Error;
};

/// Requested exam number is not registered.
class UnknownProblemError : public Error {
public:
    using Error::Error;
};

/// Dimension override is not compatible with the problem's block structure.
class IncompatibleDimensionError : public Error {
public:
    using Error::Error;
};

}  // namespace newtonflow

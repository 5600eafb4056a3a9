#pragma once

#include <stdexcept>
#include <string>

namespace twofold {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not compose.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be inverted is singular (or numerically so).
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Input is structurally degenerate, e.g. an identically zero determinant.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// The forward problem has no invertible corner operator for the given symbol.
class SynthesisError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation is violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An input file is malformed or violates the file schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace twofold

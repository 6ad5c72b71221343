#pragma once

#include <stdexcept>
#include <string>

namespace looppres {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChainConditionViolated : public Error {
 public:
  using Error::Error;
};

class EmptySubset : public Error {
 public:
  using Error::Error;
};

class NotHomogeneous : public Error {
 public:
  using Error::Error;
};

class RingMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class VertexOutOfRange : public Error {
 public:
  using Error::Error;
};

class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

class UnboundSymbol : public Error {
 public:
  using Error::Error;
};

class FaceOutsideJ : public Error {
 public:
  using Error::Error;
};

class NotACycle : public Error {
 public:
  using Error::Error;
};

/// Raised when a flag complex is required; carries the minimal non-face found.
class NotFlag : public Error {
 public:
  using Error::Error;
};

class NegativeMultiplicity : public Error {
 public:
  using Error::Error;
};

class NonIntegralMultiplicity : public Error {
 public:
  using Error::Error;
};

class InvalidComplex : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace looppres

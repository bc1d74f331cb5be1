#pragma once

#include <stdexcept>
#include <string>

namespace metacover {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ConductorError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition of the operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class BoundExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace metacover

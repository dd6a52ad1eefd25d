#pragma once

#include <stdexcept>
#include <string>

namespace fsetkit {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Operands live in different fields, curves or groups.
class Mismatch : public Error {
 public:
  using Error::Error;
};

// Enumeration or counting budget exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// A coordinate cannot be handled by an exact decision procedure.
class Unsupported : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// An arithmetic invariant failed; always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fsetkit

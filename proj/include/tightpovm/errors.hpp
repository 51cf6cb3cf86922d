#pragma once

#include <stdexcept>
#include <string>

namespace tightpovm {

// Base of every error thrown by the library. The CLI maps subclasses to exit
// codes, so keep the hierarchy shallow.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class SingularSuperOp : public Error {
 public:
  SingularSuperOp(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

// Caller violated an operation's precondition (non-prime p, n < d^2, N = 0...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotInformationallyComplete : public Error {
 public:
  using Error::Error;
};

class NotTight : public Error {
 public:
  using Error::Error;
};

class NotDualFrame : public Error {
 public:
  using Error::Error;
};

class NotCertified : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace tightpovm

#pragma once

#include <stdexcept>
#include <string>

namespace tailbound {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (negative threshold, bad spec, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// A root or minimum bracket is unusable.
class InvalidBracket : public Error {
 public:
  using Error::Error;
};

/// An exponent lies outside the moment-generating-function domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace tailbound

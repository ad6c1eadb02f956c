#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// Precondition violations on user-supplied values.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An iterative method ran out of its iteration budget.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

// A configured size or cost cap was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dlab

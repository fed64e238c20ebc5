#pragma once

#include <stdexcept>
#include <string>

namespace qcurv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on dimensions, parameters or input data does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical routine failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A scenario configuration violates a hypothesis or is malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcurv

#pragma once

#include <stdexcept>
#include <string>

namespace qsnn {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace qsnn

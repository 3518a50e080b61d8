#pragma once

#include <stdexcept>
#include <string>

namespace spinlimit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad arguments, malformed documents, violated preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A request would exceed a configured resource limit (Hilbert dimension cap).
class ResourceCapError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinlimit

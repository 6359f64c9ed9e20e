#pragma once

#include <stdexcept>
#include <string>

namespace siccalc {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

/// A ground outcome whose POVM element is numerically zero.
class DegenerateOutcome : public Error {
 public:
  using Error::Error;
};

/// Malformed or out-of-contract file contents. The message names the field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A file that cannot be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace siccalc

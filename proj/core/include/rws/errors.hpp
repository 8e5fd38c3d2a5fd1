#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rws {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: wrong dimensions, non-finite entries, bad parameters.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// A variable has zero robust scale (MAD == 0).
class DegenerateScale : public Error {
 public:
  explicit DegenerateScale(std::size_t column)
      : Error("zero median absolute deviation in column " + std::to_string(column)),
        column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// A numerical routine failed to reach its tolerance.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// Every cross-validation split failed.
class CvFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace rws

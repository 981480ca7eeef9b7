#pragma once

#include <stdexcept>
#include <string>

namespace cglmp {

// Base class for every domain error thrown by the library.  The C API
// translates these to status codes at the boundary.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Scalar argument outside its documented domain (d, p, lambda, grid, ...).
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

// Operands whose shapes do not line up.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// Input to a Hermitian-only routine that is not Hermitian within tolerance.
class NotHermitianError : public Error {
 public:
  using Error::Error;
};

// A threshold/root was requested but the Bell value never exceeds the local
// bound on the search interval.
class NoViolationError : public Error {
 public:
  using Error::Error;
};

// Top of the spectrum is degenerate, so "the" maximally violating state is
// not well defined.
class DegenerateTopError : public Error {
 public:
  using Error::Error;
};

// Two curves that must intersect on the search interval do not.
class NoCrossingError : public Error {
 public:
  using Error::Error;
};

// Filesystem/serialization failure in the reporting layer.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cglmp

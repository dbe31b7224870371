#pragma once

#include <stdexcept>
#include <string>

namespace pickfam {

// Base class for every error the library reports. The CLI maps these onto
// exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotAUnit : public Error {
 public:
  NotAUnit() : Error("element is not a unit of the quotient ring") {}
  explicit NotAUnit(const std::string& what) : Error(what) {}
};

class RingMismatch : public Error {
 public:
  RingMismatch() : Error("jet elements belong to different quotient rings") {}
};

class InvalidShape : public Error {
 public:
  using Error::Error;
};

class PointOutsideBall : public Error {
 public:
  PointOutsideBall() : Error("point lies outside the open unit ball") {}
};

class TruncationInsufficient : public Error {
 public:
  using Error::Error;
};

class SeparationFailure : public Error {
 public:
  SeparationFailure() : Error("the algebra does not separate the interpolation nodes") {}
};

class InfeasibleConstraints : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace pickfam

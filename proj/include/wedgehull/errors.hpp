#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wedge {

// Base for every failure raised by the library. The CLI maps these to
// exit code 1; usage problems are reported separately with exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point outside the open half-sphere required by the gnomonic projection.
class HalfSphereViolation : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ChartSingular : public Error {
 public:
  using Error::Error;
};

class SamplerStalled : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// The projected hull could not resolve an orientation even with exact
// arithmetic (coplanar/collinear input).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class InequalityViolation : public Error {
 public:
  InequalityViolation(const std::string& what, std::vector<double> witness)
      : Error(what), witness_(std::move(witness)) {}

  const std::vector<double>& witness() const noexcept { return witness_; }

 private:
  std::vector<double> witness_;
};

}  // namespace wedge

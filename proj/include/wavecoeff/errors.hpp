#pragma once

#include <stdexcept>
#include <string>

namespace wavecoeff {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidFieldError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class GridTooCoarseError : public Error {
 public:
  using Error::Error;
};

class InvalidWindowError : public Error {
 public:
  using Error::Error;
};

class DegenerateCoefficientError : public Error {
 public:
  using Error::Error;
};

class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

/// Raised when an iterate of the reconstruction loses positivity and
/// clamping is disabled.
class DegenerateIterateError : public Error {
 public:
  DegenerateIterateError(int iteration, const std::string& what)
      : Error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}

  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

}  // namespace wavecoeff

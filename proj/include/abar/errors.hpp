#pragma once

#include <stdexcept>
#include <string>

namespace abar {

/// Base for every error raised by the library. The C API maps each subclass
/// to a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of the operation
/// (sigma <= 0, negative variate, probability outside (0, 1), non-finite x).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A result that is not representable as a finite double.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Root bracket whose endpoints do not straddle a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Iterative method failed to meet its tolerance. Carries the best estimate
/// found and its error bound so callers can decide whether it is usable.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double best_estimate,
                 double error_bound)
      : Error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

/// Malformed user input: too few samples, unsorted data, bad CSV line.
class InputError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace abar

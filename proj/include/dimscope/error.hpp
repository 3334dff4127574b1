#pragma once

#include <stdexcept>
#include <string>

namespace dimscope {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or non-finite input data, bad file contents, too few samples.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A sample coincides with the barycenter and cannot be projected.
class DegenerateSample : public Error {
 public:
  DegenerateSample(std::size_t row, const std::string& what)
      : Error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Curve or point set that does not constrain the model.
class UnfittableCurve : public Error {
 public:
  using Error::Error;
};

/// Generator parameters that violate the family constraints.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// Multiscale sweep produced no reliable local estimate.
class NoReliableScale : public Error {
 public:
  using Error::Error;
};

/// Degenerate eigenvalue spectrum (all zero).
class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

}  // namespace dimscope

#pragma once

#include <stdexcept>
#include <string>

namespace invdyn {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: violated preconditions, malformed maps, invalid labels.
/// The CLI maps these to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to deliver a trustworthy result.
/// The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomial : public UsageError {
 public:
  ZeroPolynomial() : UsageError("zero polynomial has no roots") {}
};

class NoConvergence : public NumericalError {
 public:
  explicit NoConvergence(int iterations)
      : NumericalError("root finder did not converge after " +
                       std::to_string(iterations) + " sweeps"),
        iterations_(iterations) {}
  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

class DegenerateMap : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InvalidMap : public UsageError {
 public:
  using UsageError::UsageError;
};

class Indeterminate : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InconsistentValency : public NumericalError {
 public:
  InconsistentValency(int expected, int got)
      : NumericalError("critical points sum to deficiency " + std::to_string(got) +
                       ", expected " + std::to_string(expected)) {}
};

class DegreeCapExceeded : public UsageError {
 public:
  explicit DegreeCapExceeded(long long degree)
      : UsageError("word degree " + std::to_string(degree) + " exceeds the cap") {}
};

class StuckOrbit : public NumericalError {
 public:
  StuckOrbit()
      : NumericalError("backward orbit is stuck on an exceptional point") {}
};

class InvalidLabel : public UsageError {
 public:
  explicit InvalidLabel(int label)
      : UsageError("invalid component label " + std::to_string(label)) {}
};

class InsufficientTrace : public UsageError {
 public:
  InsufficientTrace() : UsageError("classification needs at least two resolutions") {}
};

class NotAPermutation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoFixedPoint : public NumericalError {
 public:
  explicit NoFixedPoint(int iterations)
      : NumericalError("closure still growing after " + std::to_string(iterations) + " iterations") {}
};

}  // namespace invdyn

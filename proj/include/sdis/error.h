#pragma once

/// Exception types raised by the estimation library.

#include <stdexcept>
#include <string>

namespace sdis {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// No sign change of the limit state along a direction up to the search
/// radius. The direction is safe.
class NoRootFound : public Error {
 public:
  using Error::Error;
};

/// The origin of standard-normal space is already in the failure set.
class UnsafeOrigin : public Error {
 public:
  using Error::Error;
};

/// The initial magnified Monte Carlo stage exceeded its sample cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class MaxLevelsExceeded : public Error {
 public:
  using Error::Error;
};

/// Every importance weight of a level is zero; resampling is impossible.
class AllWeightsZero : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment configuration or unknown model id.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sdis

#pragma once

#include <stdexcept>
#include <string>

namespace nlslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable tag, used in CLI error JSON.
  virtual const char* kind() const noexcept { return "error"; }
};

/// An argument violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition"; }
};

/// Time stepping produced a sup-norm beyond the overflow guard.
class DivergenceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "divergence"; }
};

/// Picard iteration distances kept growing.
class NonContractionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "non_contraction"; }
};

class MaxIterExceededError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "max_iter_exceeded"; }
};

/// A run violated the space-time L^4 smallness budget it was asked to respect.
class BudgetError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "l4_budget"; }
};

/// Malformed input file (checkpoint, config).
class FormatError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "format"; }
};

}  // namespace nlslab

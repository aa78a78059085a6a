#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

/// Invalid parameters or parameter combinations. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A memory or work budget would be exceeded. Maps to CLI exit code 3.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, long suggested_N = -1)
      : std::runtime_error(what), suggested_N_(suggested_N) {}
  /// Largest N that fits the same budget, or -1 when no suggestion applies.
  long suggested_N() const noexcept { return suggested_N_; }

 private:
  long suggested_N_;
};

/// A spectral product would grow past the configured hard band cap.
class BandOverflow : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

/// Arithmetic between objects recorded on different torus conventions.
class ConventionMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace dlab

#pragma once

#include <stdexcept>
#include <string>

namespace skms {

// Bad input: shapes, ranges, unknown names.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine could not meet its error budget.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

// A self-consistency gate failed (for example a mode convention that does
// not close under commutators).
class ConventionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or invalid run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace skms

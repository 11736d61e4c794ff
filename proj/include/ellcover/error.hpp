#pragma once

#include <stdexcept>
#include <string>

namespace ellcover {

/// Bad input: malformed parameters, violated preconditions, unparseable places.
/// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation refused because it would exceed a configured size budget.
/// The CLI maps this to exit code 3.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Broken internal invariant (an exactness assertion failed).
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ellcover

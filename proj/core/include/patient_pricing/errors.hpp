#pragma once

#include <stdexcept>
#include <string>

namespace patient_pricing {

/// Bad input: malformed files, violated invariants, mismatched lengths.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A solver or oracle was asked for more work than its hard budget allows.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace patient_pricing

#pragma once

#include <stdexcept>
#include <string>

namespace atomcalc {

// An exhaustive search would exceed its configured budget.  The engine
// refuses loudly instead of guessing; the CLI maps this to exit code 3.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Malformed model input; the CLI maps this to exit code 2.
struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace atomcalc

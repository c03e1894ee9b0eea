#pragma once

#include <stdexcept>

namespace rdg {

// Exhaustive enumeration asked for more work than the configured cap.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rdg

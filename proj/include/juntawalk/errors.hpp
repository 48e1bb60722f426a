#pragma once

#include <stdexcept>
#include <string>

namespace juntawalk {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A dimension exceeds the cap of the representation or oracle in use.
struct CapExceeded : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Certified budgets exceed the configured walk-step ceiling.
struct BudgetInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The screened coordinate pool outgrew its theoretical bound.
struct PoolOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace juntawalk

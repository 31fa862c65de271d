#pragma once

#include <stdexcept>

namespace mld1 {

// Malformed text, bad arguments, violated call preconditions.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Well-formed data that breaks a model guarantee, e.g. a model file whose
// components do not sum to one on the curve.
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumeration ran past its node budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mld1

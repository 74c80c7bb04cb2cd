#pragma once

#include <stdexcept>
#include <string>

namespace quniv {

// Malformed input or violated precondition (CLI exit code 2).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A residue-ring computation would exceed its precision or budget (CLI exit code 3).
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace quniv

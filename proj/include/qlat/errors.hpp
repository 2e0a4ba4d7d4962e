#pragma once

#include <stdexcept>
#include <string>

namespace qlat {

// Invalid input to a public operation (CLI maps this to exit code 1).
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An internal identity failed: mass, integrality, Betti-number or similar
// cross-check (CLI maps this to exit code 2).
struct consistency_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Checked fixed-width arithmetic ran out of headroom (CLI exit code 2).
struct overflow_error : std::overflow_error {
  using std::overflow_error::overflow_error;
};

} // namespace qlat

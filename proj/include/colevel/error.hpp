#pragma once

#include <stdexcept>
#include <string>

namespace colevel {

// Malformed or inconsistent user input (bad degrees, parse errors, ...).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Enumeration would exceed the configured evaluation ceiling.
struct SizeLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Zeta reconstruction could not explain the supplied counts.
struct ReconstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace colevel

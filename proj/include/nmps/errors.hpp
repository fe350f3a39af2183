#pragma once

#include <stdexcept>

namespace nmps {

// Bad user input: unknown flags, tokens or inconsistent parameters.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Unknown problem name or a problem that cannot be started.
struct ProblemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nmps

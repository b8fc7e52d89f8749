#pragma once

#include <stdexcept>
#include <string>

namespace zetaforms {

/// Invalid configuration or parameters (CLI exit code 2).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A precondition on the requested scale is violated (CLI exit code 3).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (CLI exit code 4).
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace zetaforms

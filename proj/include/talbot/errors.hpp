#pragma once

#include <stdexcept>

namespace talbot {

/// A quadrature or series did not reach its accuracy target.
struct accuracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inconsistent interferometer or run configuration.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fit problem carries no information about the parameters.
struct non_identifiable_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace talbot

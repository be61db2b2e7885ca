#pragma once

#include <stdexcept>
#include <string>

namespace adsmax {

// config / argument contract violations -> CLI exit 2
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// documented caps (subdivision, word radius) exceeded
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// iteration failures; carries the last residual in the message
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// empty domains, non-hyperbolic elements and similar data-dependent failures
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace adsmax

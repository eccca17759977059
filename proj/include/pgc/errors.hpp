#pragma once

#include <stdexcept>
#include <string>

namespace pgc {

struct DimensionMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a flow leaves its declared chart (blow-up, step collapse or
// box exit) or a requested point has no preimage in range.
struct OutOfChartError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pgc

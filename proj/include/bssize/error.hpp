#pragma once

#include <stdexcept>
#include <string>

namespace bssize {

// Invalid parameters, malformed configuration, or domain violations.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A simulation could not produce a usable result (degenerate chain,
// non-finite loss, too few usable points for a fit).
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bssize

#pragma once

#include <stdexcept>
#include <string>

namespace jcpd {

// Configuration / input problems (bad scenario files, bad parameters).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lookup of a node that is not part of the scenario roster.
struct UnknownNodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Query outside the range covered by a tabulated ephemeris.
struct EphemerisRangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graph handed to a slot scheduler contains edges of the wrong level.
struct WrongGraphError : std::logic_error {
  using std::logic_error::logic_error;
};

// Brute-force matcher refused an oversized instance.
struct TooLargeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Metrics asked to evaluate a plan that does not cover whole FSA states.
struct IncompletePlanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace jcpd

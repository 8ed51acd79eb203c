#ifndef MIXTEST_ERRORS_HPP
#define MIXTEST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mixtest {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid distribution/model parameters (scale <= 0, probability outside (0,1), ...).
struct ParameterError : Error {
  using Error::Error;
};

// A caller violated an operation contract (weights off the simplex, empty trace, ...).
struct ContractError : Error {
  using Error::Error;
};

// Sampler wiring problems detected before iteration 1 (missing conditional, bad config).
struct ConfigError : Error {
  using Error::Error;
};

// Support mismatch: an observation has zero density under every component,
// or a conditional is non-integrable for the given statistics.
struct DegenerateError : Error {
  using Error::Error;
};

// Numeric guard tripped (proposal density zero at the current point, singular matrix, ...).
struct NumericError : Error {
  using Error::Error;
};

// Quadrature failed to reach the requested tolerance.
struct AccuracyError : Error {
  double achieved_tolerance;
  AccuracyError(const std::string& msg, double achieved)
      : Error(msg), achieved_tolerance(achieved) {}
};

// Malformed input file.
struct ParseError : Error {
  using Error::Error;
};

// Operation not defined for the given family.
struct UnsupportedError : Error {
  using Error::Error;
};

}  // namespace mixtest

#endif

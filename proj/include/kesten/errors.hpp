#ifndef KESTEN_ERRORS_HPP
#define KESTEN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kesten {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration or model parameters (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

// Non-conformable matrix/vector dimensions.
struct DimensionError : Error {
    using Error::Error;
};

// Pivot collapsed during elimination; signals P(det A = 0) > 0 cases.
struct SingularMatrixError : Error {
    using Error::Error;
};

// No sign change of log h within the search range, or the estimator
// degenerated (ESS floor) before one was found.
struct NoRootError : Error {
    using Error::Error;
};

// Top order statistics are tied; Hill estimator undefined.
struct DegenerateTailError : Error {
    using Error::Error;
};

// Inputs that must be positive for a fit were not.
struct NonPositiveDataError : Error {
    using Error::Error;
};

// Overflow/non-finite values where the algorithm cannot continue.
struct NumericalError : Error {
    using Error::Error;
};

}  // namespace kesten

#endif  // KESTEN_ERRORS_HPP

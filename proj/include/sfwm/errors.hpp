#pragma once

#include <stdexcept>
#include <string>

namespace sfwm
{

// Bad user-supplied values: out-of-range config fields, malformed input
// files, unsorted tag streams. CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Arguments outside the mathematical domain of an operation (non-positive
// Q factor, zero transmittance passed to a log, ...). Exit code 2.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Estimation failures: no dip in the spectrum, degenerate abscissa.
// CLI maps these to exit code 3.
class FitError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Failures writing output artifacts. CLI maps these to exit code 4.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace sfwm

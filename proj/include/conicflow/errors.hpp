#pragma once

#include <stdexcept>
#include <string>

namespace conicflow {

/// Malformed or inconsistent user input. CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Positivity loss or non-finite values during time integration. CLI exit code 2.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A spectral check needs eigenvalues beyond the certified prefix. CLI exit code 3.
class InsufficientSpectralData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace conicflow

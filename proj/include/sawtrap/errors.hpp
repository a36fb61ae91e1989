#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace sawtrap {

// Adaptive stepping hit the floor; carries the last time that was reached.
struct StepUnderflowError : std::runtime_error {
    double last_good_time;
    explicit StepUnderflowError(double t, const std::string& what)
        : std::runtime_error(what), last_good_time(t) {}
};

// Adaptive quadrature did not reach the requested tolerance.
struct QuadratureError : std::runtime_error {
    double best_estimate;
    explicit QuadratureError(double estimate, const std::string& what)
        : std::runtime_error(what), best_estimate(estimate) {}
};

struct DegenerateDegreeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Voltage ratio outside the band that admits a two-layer equilibrium.
struct NoTrapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleError : std::runtime_error {
    std::complex<double> location;
    explicit PoleError(std::complex<double> s, const std::string& what)
        : std::runtime_error(what), location(s) {}
};

// Finite-difference step too small for the magnitudes involved.
struct StencilError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoBoundaryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Configuration schema violation; names the offending field.
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string field_name, const std::string& what)
        : std::runtime_error(what), field(std::move(field_name)) {}
};

}  // namespace sawtrap

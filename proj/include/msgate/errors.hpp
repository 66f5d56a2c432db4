#ifndef MSGATE_ERRORS_HPP
#define MSGATE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace msgate {

// A multi-tone modulation was passed where a scalar envelope is required.
class UnsupportedModulationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Closed-form alpha/theta requested at a detuning where a denominator vanishes.
class SingularParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// No zeta_minus achieves displacement closure for the given pulse pair.
class NoClosureError : public std::runtime_error {
public:
    NoClosureError(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual(best_residual) {}
    double best_residual;
};

// The rotation angle over the requested window has the wrong sign.
class UncalibratableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive step-size control underflowed during time integration.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double time_reached)
        : std::runtime_error(what), time_reached(time_reached) {}
    double time_reached;
};

// A computed quantity violated one of its own consistency bounds
// (e.g. the imaginary residue of a theta integral).
class InternalConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace msgate

#endif

#ifndef MOLLER_ERRORS_HPP
#define MOLLER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace moller {

/// Violated operation precondition (invalid argument values or domains).
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Inconsistent configuration (window/ramp/band placement, cross-field checks).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure inside an integrator or quadrature routine.
struct integration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scenario file could not be parsed; carries the offending line.
struct parse_error : std::runtime_error {
    int line;
    parse_error(const std::string& msg, int line_number)
        : std::runtime_error(msg + " (line " + std::to_string(line_number) + ")"),
          line(line_number) {}
};

} // namespace moller

#endif

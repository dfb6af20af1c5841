#pragma once

#include <stdexcept>
#include <string>

namespace bk {

// bad shapes, empty inputs, malformed fixtures
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// operator outside the domain of the requested function (e.g. log of a non-PSD matrix)
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct precondition_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// non-convergence, ill-conditioning; carries the residual that tripped it
struct numerical_error : std::runtime_error {
    double residual;
    numerical_error(const std::string& what, double res)
        : std::runtime_error(what), residual(res) {}
};

struct property_failure : std::runtime_error {
    double margin;
    property_failure(const std::string& what, double m)
        : std::runtime_error(what), margin(m) {}
};

} // namespace bk

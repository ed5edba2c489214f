#pragma once

#include <stdexcept>
#include <string>

namespace hcurve {

// Input violates a precondition (empty root set, root off the circle, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to converge or met a non-generic configuration.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hcurve

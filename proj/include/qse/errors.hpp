#pragma once

#include <stdexcept>
#include <string>

namespace qse {

// Parameter or input outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure (quadrature, root bracketing, time stepping) failed
// to converge; the message carries diagnostics for the failing stage.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qse

#pragma once

#include <stdexcept>
#include <string>

namespace bitcomp {

// Two keys agreed on every bit up to the depth cap: either the keys are
// equal (probability zero under a continuous model) or the cap is too small.
class DepthCapExceeded : public std::runtime_error {
public:
    explicit DepthCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive quadrature could not certify the requested tolerance.
class QuadratureFailure : public std::runtime_error {
public:
    explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};

// log-gamma requested at a nonpositive integer.
class PoleArgument : public std::domain_error {
public:
    explicit PoleArgument(const std::string& what) : std::domain_error(what) {}
};

// Density sampler asked to condition on an interval of mass zero.
class ZeroMassInterval : public std::runtime_error {
public:
    explicit ZeroMassInterval(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bitcomp

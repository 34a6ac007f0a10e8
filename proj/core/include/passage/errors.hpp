// errors.hpp - exception types shared across the toolkit

#pragma once

#include <stdexcept>
#include <string>

namespace passage {

// Degenerate zero-field spectrum: classification/labels are undefined.
struct DegenerateError : std::runtime_error {
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

// Eigenvector continuity tracking could not resolve a unique branch.
struct AmbiguousPathError : std::runtime_error {
    explicit AmbiguousPathError(const std::string& what) : std::runtime_error(what) {}
};

// Pulse/protocol geometry contradicts the requested protocol kind.
struct GeometryError : std::invalid_argument {
    explicit GeometryError(const std::string& what) : std::invalid_argument(what) {}
};

// Adaptive integrator drove the step size below the representable floor.
struct StepUnderflowError : std::runtime_error {
    explicit StepUnderflowError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace passage

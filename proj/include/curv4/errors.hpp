#pragma once

#include <stdexcept>
#include <string>

namespace curv4 {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegeneratePlaneError : GeometryError {
    using GeometryError::GeometryError;
};

struct SingularCoframeError : GeometryError {
    using GeometryError::GeometryError;
};

struct StepTooLargeError : GeometryError {
    using GeometryError::GeometryError;
};

struct NonUnitVectorError : GeometryError {
    using GeometryError::GeometryError;
};

struct DegenerateWplusError : GeometryError {
    using GeometryError::GeometryError;
};

struct NonpositiveEigenvalueError : GeometryError {
    using GeometryError::GeometryError;
};

struct StepCountError : GeometryError {
    using GeometryError::GeometryError;
};

struct UnsupportedFieldError : GeometryError {
    using GeometryError::GeometryError;
};

struct ParameterError : GeometryError {
    using GeometryError::GeometryError;
};

// CLI / config layer
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace curv4

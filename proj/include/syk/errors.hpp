#pragma once

#include <stdexcept>
#include <string>

namespace syk {

// Operands live on different qubit registers or matrix dimensions disagree.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A dense realization would exceed the configured qubit cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation that requires a Hermitian operator received a non-Hermitian one.
struct NotHermitianError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Invalid model / run parameters.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A sample whose correlator normalization D(0) vanishes, or a zero boson
// operator; the message names the offending seed where applicable.
struct DegenerateSampleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Optimizer failed to reach its goal within the iteration budget.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File system / serialization failures in the CLI layer.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace syk

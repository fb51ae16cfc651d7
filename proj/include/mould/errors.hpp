#pragma once

// Error kinds. The CLI maps them onto exit codes 2 (precondition) and 3 (numeric).

#include <stdexcept>
#include <string>

namespace mould {

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evaluation outside a mould's (letters, length) window.
struct WindowError : PreconditionError {
    using PreconditionError::PreconditionError;
};

// A small divisor that vanishes exactly: <m, lambda> = 0 or ell^m = 1.
struct ResonanceError : PreconditionError {
    using PreconditionError::PreconditionError;
};

// Quadrature or tail bound could not reach the requested tolerance.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mould

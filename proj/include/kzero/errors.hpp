#pragma once

#include <stdexcept>
#include <string>

namespace kzero {

// Caller violated a documented precondition (mixed rings, wrong dimensions,
// unsupported ring for an operation, malformed input).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A desk-scale guard tripped: enumeration too large, integer overflow, or an
// explicit cap exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An invariant the library itself maintains was found broken.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace kzero

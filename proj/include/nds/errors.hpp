#pragma once

#include <stdexcept>

namespace nds {

// Base type for every error the toolkit raises on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A grid cannot hold `count` distinct integers inside [lo, hi].
struct InfeasibleGridError : Error {
    using Error::Error;
};

// A design-space spec, architecture, or option set violates its invariants.
struct InvalidConfigError : Error {
    using Error::Error;
};

// An op descriptor has no registered flop/param formula.
struct UnknownOpError : Error {
    using Error::Error;
};

// No record falls inside the requested complexity range.
struct EmptyRangeError : Error {
    using Error::Error;
};

// An operation that needs at least one record got none.
struct EmptyPoolError : Error {
    using Error::Error;
};

// The external evaluator died, timed out, or broke the protocol.
struct EvaluatorError : Error {
    using Error::Error;
};

// A pool file, header, or config document does not match its schema.
struct SchemaError : Error {
    using Error::Error;
};

}  // namespace nds

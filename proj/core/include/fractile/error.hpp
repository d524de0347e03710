#pragma once

#include <stdexcept>
#include <string>

namespace fractile {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input.
struct InvalidArgument : Error {
    using Error::Error;
};

// Malformed specification or geometry document; the message carries the location.
struct ParseError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

// Valid input the requested method does not handle (e.g. non-similitude maps for the scaling sum).
struct Unsupported : Error {
    using Error::Error;
};

// Work would exceed a configured budget (points, tiles, cells).
struct BudgetExceeded : Error {
    using Error::Error;
};

// An iteration failed to certify its result within the allowed effort.
struct Inconclusive : Error {
    using Error::Error;
};

// Evaluation point outside the range where a formula is valid.
struct OutOfRange : Error {
    using Error::Error;
};

// The requested open set or tiling does not meet a precondition (infeasible, trivial, incompatible).
struct PreconditionFailed : Error {
    using Error::Error;
};

}  // namespace fractile

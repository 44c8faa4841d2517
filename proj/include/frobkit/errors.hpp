#pragma once

#include <stdexcept>
#include <string>

namespace frobkit {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Result does not fit the fixed-width integer budget of the operation.
struct OverflowError : Error {
    using Error::Error;
};

// Factoring gave up: an unfactored cofactor survived trial division and the
// rho fallback.  Raised instead of ever returning a possibly-wrong value.
struct FactorizationError : Error {
    using Error::Error;
};

// A trace value violates |a_p| <= 2*sqrt(p).
struct HasseError : Error {
    using Error::Error;
};

// Text input (model string, catalog, cache file) failed to parse or validate.
struct ParseError : Error {
    using Error::Error;
};

// Cache file is inconsistent with the curve it is being used for.
struct CacheError : Error {
    using Error::Error;
};

} // namespace frobkit

#pragma once

#include <stdexcept>
#include <string>

namespace graftlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad sizes, mismatched dimensions
struct DimensionError : Error {
    using Error::Error;
};

// input outside the domain of an operation (det != 1, non-SPD, ...)
struct DomainError : Error {
    using Error::Error;
};

// solver did not converge or produced non-finite output
struct NumericalError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace graftlab

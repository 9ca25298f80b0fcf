#pragma once

#include <stdexcept>
#include <string>

namespace qtp {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad grid: mismatched grids, undersampled oscillations, non-decayed tails.
struct GridError : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of an operation (k=m=0, x<=1, ...).
struct DomainError : Error {
    using Error::Error;
};

// Object cannot be built from the given ingredients (zero on-shell kernel,
// zero total absorption, ...).
struct ConstructionError : Error {
    using Error::Error;
};

// A computed quantity failed a numerical sanity contract (negative density
// beyond clipping tolerance, failed tail test, ...).
struct NumericsError : Error {
    using Error::Error;
};

// Configuration file problems (schema, ranges, missing fields).
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace qtp

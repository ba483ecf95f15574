#pragma once

#include <stdexcept>
#include <string>

namespace kcrit {

// Base for every error raised by the library. The CLI maps the subclasses
// onto exit codes 1 (spec), 2 (precondition) and 3 (numerics).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad spec strings, wrong dimensions, invalid parameters.
class SpecError : public Error {
public:
    using Error::Error;
};

/// A mathematical hypothesis fails: the curve is not immersed, the family is
/// degenerate somewhere on the knot, the Gram matrix is not SPD.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

/// Quadrature or sampling did not reach the requested accuracy.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace kcrit

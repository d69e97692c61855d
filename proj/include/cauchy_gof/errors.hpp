#pragma once

#include <stdexcept>
#include <string>

namespace cauchy_gof {

/// Input data or arguments violate a documented precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to produce a usable result.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Zero is not strictly inside the convex hull of the constrained values,
/// so the empirical likelihood problem has no feasible solution.
class HullViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace cauchy_gof

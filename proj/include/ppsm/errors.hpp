#pragma once

#include <stdexcept>
#include <string>

namespace ppsm {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed (non-convergence, flat objective, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Pre- and post-selected states are orthogonal; the weak value is undefined.
class OrthogonalSelection : public Error {
public:
    using Error::Error;
};

/// Post-selection probability at or below the floor.
class ZeroPostSelection : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// An approximation was requested outside its region of validity.
class RegimeViolation : public Error {
public:
    using Error::Error;
};

/// Unbalanced-pointer formula requested for a pointer centered at zero.
class DegeneratePointer : public Error {
public:
    using Error::Error;
};

class EmptyRegion : public Error {
public:
    using Error::Error;
};

class NoConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class FlatFunction : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A root search was given an interval without a sign change.
class NoBracket : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A readout is incompatible with the candidate coupling.
class ZeroDensity : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The likelihood maximum sits on the edge of the search interval.
class BoundaryMaximum : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace ppsm

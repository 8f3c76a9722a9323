#pragma once

#include <stdexcept>

namespace persuasion {

// Root of the library's exception hierarchy.
class PersuasionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed inputs: bad probability vectors, shape mismatches, parameters
// outside their documented ranges.
class ValidationError : public PersuasionError {
public:
    using PersuasionError::PersuasionError;
};

// A binary-only operation was given a different number of states.
class UnsupportedStateCount : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// An envelope operation was asked to work over a simplex it does not support.
class UnsupportedDimension : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Threshold outside (0, 1].
class InvalidThreshold : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// An operation was applied outside its mathematical domain.
class DomainError : public PersuasionError {
public:
    using PersuasionError::PersuasionError;
};

// Conditioning on a signal whose marginal probability is zero.
class ZeroProbabilitySignal : public DomainError {
public:
    using DomainError::DomainError;
};

// A posterior distribution whose mean does not match the required anchor.
class NotBayesPlausible : public DomainError {
public:
    using DomainError::DomainError;
};

// A posterior atom places mass on a state the anchor excludes.
class AbsoluteContinuityViolated : public DomainError {
public:
    using DomainError::DomainError;
};

// The interim receiver belief left the interior of the simplex, so the
// second-stage transformation is defined only by its continuity extension.
class DegenerateInterimBelief : public DomainError {
public:
    using DomainError::DomainError;
};

// A verified property failed; the message carries the counterexample.
class PropertyViolation : public PersuasionError {
public:
    using PersuasionError::PersuasionError;
};

// An iterative routine failed to converge or produced a non-finite value.
class NumericalFailure : public PersuasionError {
public:
    using PersuasionError::PersuasionError;
};

} // namespace persuasion

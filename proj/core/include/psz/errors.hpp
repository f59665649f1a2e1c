#pragma once

#include <stdexcept>
#include <string>

namespace psz {

// Two families: bad input (ParameterError) and numerical breakdown
// (NumericError). The CLI maps them to distinct exit codes.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ContinuationStall : public NumericError {
public:
    using NumericError::NumericError;
};

class NonConvergence : public NumericError {
public:
    using NumericError::NumericError;
};

class DomainTooLarge : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class AsymmetricReset : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class ProbabilityMismatch : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class RegimeViolation : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class InfeasibleSplit : public ParameterError {
public:
    using ParameterError::ParameterError;
};

}  // namespace psz

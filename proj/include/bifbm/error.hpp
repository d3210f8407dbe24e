#pragma once

#include <stdexcept>
#include <string>

namespace bifbm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Out-of-range parameter or malformed kernel description.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Time grid violates its invariants (ordering, sign, duplicates).
class GridError : public Error {
public:
    using Error::Error;
};

/// Non-finite values or lost precision in a numerical routine.
class NumericError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Raised when a matrix that must be factorized is not numerically PSD.
class NotPsdError : public NumericError {
public:
    NotPsdError(const std::string& what, double min_eigenvalue)
        : NumericError(what), min_eigenvalue_(min_eigenvalue) {}

    [[nodiscard]] double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

}  // namespace bifbm

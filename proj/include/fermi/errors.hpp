#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fermi {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (or of the model).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A Fermi event was requested beyond the proper radius of its slice.
class OutOfSliceError : public DomainError {
public:
    OutOfSliceError(const std::string& what, double rho, double rho_slice)
        : DomainError(what), rho_(rho), rho_slice_(rho_slice) {}

    double rho() const noexcept { return rho_; }
    double rho_slice() const noexcept { return rho_slice_; }

private:
    double rho_;
    double rho_slice_;
};

/// Spatial curvature k = +1 is not supported.
class UnsupportedCurvatureError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Tabulated input rejected; index() names the first offending sample.
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, std::size_t index)
        : Error(what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// A numerical procedure did not reach its tolerance.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double estimate, double error_bound)
        : Error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// Root finder called on an interval without a sign change.
class BracketError : public Error {
public:
    using Error::Error;
};

/// An internal identity was violated beyond round-off (e.g. a negative radicand).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// Formats a double with 17 significant digits for diagnostics.
std::string format_double(double x);

}  // namespace fermi

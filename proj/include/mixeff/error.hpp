#pragma once

#include <stdexcept>
#include <string>

namespace mixeff {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument outside the operation's domain (non-finite value, bad range, n out of bounds).
class DomainError : public Error {
public:
    using Error::Error;
};

// Too few observations for the requested statistic.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

// Sample with no information for the statistic: zero variance, or all entries zero.
class DegenerateSampleError : public Error {
public:
    using Error::Error;
};

// Input violates an operation precondition that is checked at runtime.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Exact signed-rank null requested for a sample with tied magnitudes.
class TiesUnsupportedError : public Error {
public:
    using Error::Error;
};

}  // namespace mixeff

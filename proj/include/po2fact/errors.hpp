#pragma once

#include <stdexcept>
#include <string>

namespace po2fact {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise unusable scalar input.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// Matrix/vector shape mismatch.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Input that makes the operation undefined (all-zero matrix, empty basis).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Factorization requires rows <= cols; the caller must transpose first.
class OrientationError : public Error {
public:
    using Error::Error;
};

/// Malformed PO2F data. Subclasses distinguish the failure kinds.
class FormatError : public Error {
public:
    using Error::Error;
};

class BadMagicError : public FormatError {
public:
    using FormatError::FormatError;
};

class TruncatedError : public FormatError {
public:
    using FormatError::FormatError;
};

class VersionError : public FormatError {
public:
    using FormatError::FormatError;
};

class RangeError : public FormatError {
public:
    using FormatError::FormatError;
};

} // namespace po2fact

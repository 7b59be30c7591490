// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace cachesched {

/// Base for every error raised by the library. The CLI maps these to exit 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Persisted artifact does not match its JSON schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Well-formed value that breaks a type invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Vector or sequence lengths disagree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A denominator, norm or mean is too close to zero to divide by.
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Input outside the mathematical domain of an operation (non-finite, out of range).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Policy or run configuration is inconsistent or incomplete.
class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace cachesched

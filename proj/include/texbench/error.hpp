// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <stdexcept>
#include <string>

namespace texbench {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (shape, channel count, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Numeric argument outside the domain where the operation is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Computation produced a degenerate quantity (zero-mean channel,
/// non-positive illuminant, collapsed mixture component).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// File system or codec failure.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed binary or text file.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace texbench

#pragma once

#include <stdexcept>
#include <string>

namespace qlctx {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An a/b-direction quantity was requested but the context carries no p_a_given_b.
class MissingReverseMatrix : public Error {
public:
    MissingReverseMatrix() : Error("operation requires p_a_given_b, which the context does not provide") {}
};

/// A coefficient of supplementarity is undefined because some contributing probability is zero.
class DegenerateContext : public Error {
public:
    using Error::Error;
};

class NotTrigonometric : public Error {
public:
    using Error::Error;
};

class BasisNotOrthonormal : public Error {
public:
    BasisNotOrthonormal() : Error("a-basis is not orthonormal; Born rule and operator for a are unavailable") {}
};

class ZeroMarginal : public Error {
public:
    using Error::Error;
};

class SequenceTooShort : public Error {
public:
    using Error::Error;
};

class MissingStream : public Error {
public:
    using Error::Error;
};

class NotStabilized : public Error {
public:
    using Error::Error;
};

/// Input document does not match the expected schema. `path()` is a JSON path such as `$.p_b_given_a[1][0]`.
class SchemaError : public Error {
public:
    SchemaError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Raised when an internal consistency check fails. Any occurrence is a bug.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace qlctx

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vode {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZeroInterval : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class EmptyIntersection : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class SingularPivot : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// Raised by the field parser; `position` is a byte offset into the source text.
class SyntaxError : public ParseError {
public:
    SyntaxError(std::size_t position, const std::string& message)
        : ParseError("syntax error at offset " + std::to_string(position) + ": " + message),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class UnknownIdentifier : public ParseError {
public:
    UnknownIdentifier(std::size_t position, const std::string& name)
        : ParseError("unknown identifier '" + name + "' at offset " + std::to_string(position)),
          position_(position), name_(name) {}
    std::size_t position() const noexcept { return position_; }
    const std::string& name() const noexcept { return name_; }

private:
    std::size_t position_;
    std::string name_;
};

class ArityMismatch : public ParseError {
public:
    using ParseError::ParseError;
};

class StepTooSmall : public Error {
public:
    using Error::Error;
};

class MaxStepsExceeded : public Error {
public:
    using Error::Error;
};

class NoCrossing : public Error {
public:
    using Error::Error;
};

class TransversalityFailure : public Error {
public:
    using Error::Error;
};

}  // namespace vode

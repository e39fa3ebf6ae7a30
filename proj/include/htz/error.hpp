#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace htz {

enum class ErrorKind {
    SyntaxError,
    NegativeExponent,
    DivergentMellin,
    NonConvergence,
    TruncationTooSmall,
    MismatchedTruncation,
    EmptyExactRegion,
    InvalidDegrees,
    DuplicateExponents,
    PoleAtSample,
    HypothesisViolated,
    UnknownSuite,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Domain error raised by every module. The kind is stable and machine-readable;
// the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Parse failure with the 0-based character offset of the offending token.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& message)
        : Error(ErrorKind::SyntaxError,
                message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace htz

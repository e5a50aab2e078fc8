#pragma once

#include <stdexcept>
#include <string>

namespace lowfreq {

enum class ErrorKind {
    MalformedHeader,
    UnsupportedEncoding,
    MultiChannel,
    IoFailure,
    InvalidParameter,
    NonIntegerFactor,
    TooShort,
    InvalidRange,
    EmptyReference,
    NoValidPairs,
    LengthMismatch,
    DegenerateLabels,
    TooFewItems,
    ParseError,
    DuplicateId,
    MissingHypotheses,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace lowfreq

#include "lowfreq/error.hpp"

namespace lowfreq {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedHeader: return "MalformedHeader";
        case ErrorKind::UnsupportedEncoding: return "UnsupportedEncoding";
        case ErrorKind::MultiChannel: return "MultiChannel";
        case ErrorKind::IoFailure: return "IoFailure";
        case ErrorKind::InvalidParameter: return "InvalidParameter";
        case ErrorKind::NonIntegerFactor: return "NonIntegerFactor";
        case ErrorKind::TooShort: return "TooShort";
        case ErrorKind::InvalidRange: return "InvalidRange";
        case ErrorKind::EmptyReference: return "EmptyReference";
        case ErrorKind::NoValidPairs: return "NoValidPairs";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::DegenerateLabels: return "DegenerateLabels";
        case ErrorKind::TooFewItems: return "TooFewItems";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::DuplicateId: return "DuplicateId";
        case ErrorKind::MissingHypotheses: return "MissingHypotheses";
    }
    return "Error";
}

}  // namespace lowfreq

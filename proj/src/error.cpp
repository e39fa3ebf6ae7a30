#include "htz/error.hpp"

namespace htz {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::NegativeExponent: return "NegativeExponent";
        case ErrorKind::DivergentMellin: return "DivergentMellin";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
        case ErrorKind::MismatchedTruncation: return "MismatchedTruncation";
        case ErrorKind::EmptyExactRegion: return "EmptyExactRegion";
        case ErrorKind::InvalidDegrees: return "InvalidDegrees";
        case ErrorKind::DuplicateExponents: return "DuplicateExponents";
        case ErrorKind::PoleAtSample: return "PoleAtSample";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::UnknownSuite: return "UnknownSuite";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace htz

#include "meritfair/error.hpp"

namespace meritfair {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Parse: return "parse";
        case ErrorCode::Domain: return "domain";
        case ErrorCode::DuplicateId: return "duplicate-id";
        case ErrorCode::UnknownId: return "unknown-id";
        case ErrorCode::MissingCriterion: return "missing-criterion";
        case ErrorCode::MissingAttribute: return "missing-attribute";
        case ErrorCode::UndefinedRate: return "undefined-rate";
        case ErrorCode::AmbiguousRate: return "ambiguous-rate";
        case ErrorCode::MissingRate: return "missing-rate";
        case ErrorCode::PopulationTooLarge: return "population-too-large";
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

}  // namespace meritfair

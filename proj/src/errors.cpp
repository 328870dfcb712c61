#include "stringalg/errors.hpp"

namespace stringalg {

std::string_view code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::UnknownLabel: return "unknown-label";
    case ErrorCode::NonComposable: return "non-composable";
    case ErrorCode::InvalidRelation: return "invalid-relation";
    case ErrorCode::InvalidWalk: return "invalid-walk";
    case ErrorCode::BandFound: return "band-found";
    case ErrorCode::IsProjective: return "is-projective";
    case ErrorCode::IsInjective: return "is-injective";
    case ErrorCode::ProjectiveSummand: return "projective-summand";
    case ErrorCode::ShapeMismatch: return "shape-mismatch";
    case ErrorCode::NotIntertwining: return "not-intertwining";
    case ErrorCode::NotIrreducible: return "not-irreducible";
    case ErrorCode::NodeAbsent: return "node-absent";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::Inconsistency: return "inconsistency";
    case ErrorCode::Verification: return "verification-failed";
    case ErrorCode::Overflow: return "overflow";
    }
    return "unknown";
}

} // namespace stringalg

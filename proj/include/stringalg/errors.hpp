#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stringalg {

enum class ErrorCode {
    Syntax,
    UnknownLabel,
    NonComposable,
    InvalidRelation,
    InvalidWalk,
    BandFound,
    IsProjective,
    IsInjective,
    ProjectiveSummand,
    ShapeMismatch,
    NotIntertwining,
    NotIrreducible,
    NodeAbsent,
    OutOfRange,
    Inconsistency,
    Verification,
    Overflow,
};

// Stable machine-readable name, used by the CLI and JSON reports.
std::string_view code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace stringalg

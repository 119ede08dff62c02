#pragma once

#include <stdexcept>
#include <string>

namespace knotoid {

// Error codes shared across the library. Every failure carries one of these
// so callers (and the CLI) can map problems to exit codes without string
// matching.
enum class ErrorCode {
    SyntaxError,
    NonPlanar,
    BadEndpoints,
    DisconnectedSegment,
    MissingOrientation,
    PartialState,
    NotPlanar,
    NotKnotoid,
    StateSpaceTooLarge,
    NegativeExponentSubstitution,
    IncompatibleSurfaces,
    NotNormal,
    NotAConwayTriple,
    StaleMove,
    RecursionBudgetExceeded,
    NormalizationFailed,
    BadArgument,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::NonPlanar: return "NonPlanar";
        case ErrorCode::BadEndpoints: return "BadEndpoints";
        case ErrorCode::DisconnectedSegment: return "DisconnectedSegment";
        case ErrorCode::MissingOrientation: return "MissingOrientation";
        case ErrorCode::PartialState: return "PartialState";
        case ErrorCode::NotPlanar: return "NotPlanar";
        case ErrorCode::NotKnotoid: return "NotKnotoid";
        case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
        case ErrorCode::NegativeExponentSubstitution: return "NegativeExponentSubstitution";
        case ErrorCode::IncompatibleSurfaces: return "IncompatibleSurfaces";
        case ErrorCode::NotNormal: return "NotNormal";
        case ErrorCode::NotAConwayTriple: return "NotAConwayTriple";
        case ErrorCode::StaleMove: return "StaleMove";
        case ErrorCode::RecursionBudgetExceeded: return "RecursionBudgetExceeded";
        case ErrorCode::NormalizationFailed: return "NormalizationFailed";
        case ErrorCode::BadArgument: return "BadArgument";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace knotoid

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isg {

enum class ErrorCode {
    UnequalServiceCounts,
    CyclicDependencies,
    NegativeReward,
    DuplicateLabel,
    UnknownEdgeEndpoint,
    SelfEdge,
    RewardOverflow,
    ProfileMismatch,
    UnknownPlayer,
    NotUniform,
    SizeGuardExceeded,
    NoEquilibriumExists,
    InvalidParams,
    MalformedFormula,
    UnknownCannedName,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnequalServiceCounts: return "UnequalServiceCounts";
        case ErrorCode::CyclicDependencies: return "CyclicDependencies";
        case ErrorCode::NegativeReward: return "NegativeReward";
        case ErrorCode::DuplicateLabel: return "DuplicateLabel";
        case ErrorCode::UnknownEdgeEndpoint: return "UnknownEdgeEndpoint";
        case ErrorCode::SelfEdge: return "SelfEdge";
        case ErrorCode::RewardOverflow: return "RewardOverflow";
        case ErrorCode::ProfileMismatch: return "ProfileMismatch";
        case ErrorCode::UnknownPlayer: return "UnknownPlayer";
        case ErrorCode::NotUniform: return "NotUniform";
        case ErrorCode::SizeGuardExceeded: return "SizeGuardExceeded";
        case ErrorCode::NoEquilibriumExists: return "NoEquilibriumExists";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::MalformedFormula: return "MalformedFormula";
        case ErrorCode::UnknownCannedName: return "UnknownCannedName";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

// Every domain failure in the library is reported through this exception.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace isg

#include "reliab/error.hpp"

namespace reliab {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidConstraints: return "InvalidConstraints";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ClaimBelowGoal: return "ClaimBelowGoal";
        case ErrorCode::Unsatisfiable: return "Unsatisfiable";
        case ErrorCode::NoClaimSupportable: return "NoClaimSupportable";
        case ErrorCode::CrossoverDiverged: return "CrossoverDiverged";
        case ErrorCode::NormalizationFailure: return "NormalizationFailure";
        case ErrorCode::NumericFailure: return "NumericFailure";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NonMonotoneMonths: return "NonMonotoneMonths";
        case ErrorCode::FitDiverged: return "FitDiverged";
        case ErrorCode::InsufficientHistory: return "InsufficientHistory";
        case ErrorCode::NoFiniteMedian: return "NoFiniteMedian";
        case ErrorCode::InsufficientWarmup: return "InsufficientWarmup";
        case ErrorCode::MisalignedRecords: return "MisalignedRecords";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace reliab

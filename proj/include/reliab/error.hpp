#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reliab {

enum class ErrorCode {
    InvalidConstraints,
    InvalidArgument,
    ClaimBelowGoal,
    Unsatisfiable,
    NoClaimSupportable,
    CrossoverDiverged,
    NormalizationFailure,
    NumericFailure,
    ParseError,
    NonMonotoneMonths,
    FitDiverged,
    InsufficientHistory,
    NoFiniteMedian,
    InsufficientWarmup,
    MisalignedRecords,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (and the CLI exit path) can dispatch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace reliab

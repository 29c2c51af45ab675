#pragma once

#include <stdexcept>
#include <string>

namespace nluq {

enum class ErrorCode {
    InvalidArgument,
    EmptyInput,
    NonIntegerStepsPerDay,
    EmptyPartition,
    IncompatibleResolution,
    TooShort,
    AllDaysDegenerate,
    MismatchedPartitions,
    LengthMismatch,
    UndefinedKld,
    InvalidParams,
    AlignmentError,
    ZeroVariance,
    NearZeroDenominator,
    TooFewLevels,
    ParseError,
    NonUniformSpacing,
    NonFiniteValue,
    ConfigError,
    IoError,
};

constexpr const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::NonIntegerStepsPerDay: return "NonIntegerStepsPerDay";
        case ErrorCode::EmptyPartition: return "EmptyPartition";
        case ErrorCode::IncompatibleResolution: return "IncompatibleResolution";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::AllDaysDegenerate: return "AllDaysDegenerate";
        case ErrorCode::MismatchedPartitions: return "MismatchedPartitions";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::UndefinedKld: return "UndefinedKLD";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::AlignmentError: return "AlignmentError";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::NearZeroDenominator: return "NearZeroDenominator";
        case ErrorCode::TooFewLevels: return "TooFewLevels";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NonUniformSpacing: return "NonUniformSpacing";
        case ErrorCode::NonFiniteValue: return "NonFiniteValue";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable error code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

/// Counts of pathological bins in a base/net histogram pair.
struct KldDiagnostics {
    long problem_bins = 0;   // bins where exactly one side has zero mass
    long days_affected = 0;  // days containing at least one such bin
    long undefined_days = 0; // days where the base has mass in a bin the net does not cover
};

class UndefinedKldError : public Error {
public:
    UndefinedKldError(const std::string& message, KldDiagnostics diag)
        : Error(ErrorCode::UndefinedKld, message), diagnostics(diag) {}

    KldDiagnostics diagnostics;
};

} // namespace nluq

#pragma once

#include <stdexcept>
#include <string>

namespace specres {

// Every recoverable failure in the library maps to one of these codes.
// The C API exposes the same enumeration as integer status values.
enum class ErrorCode {
    InvalidArgument = 1,
    MismatchedCardinality,
    InsufficientMeasurements,
    PencilSingular,
    RegimeViolation,
    PreconditionViolation,
    RankDeficient,
    Singular,
    ConvergenceFailure,
    SeparationInfeasible,
    InfeasibleParameters,
    OracleRegimeViolation,
    NoiseBudgetExceeded,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::MismatchedCardinality: return "MismatchedCardinality";
        case ErrorCode::InsufficientMeasurements: return "InsufficientMeasurements";
        case ErrorCode::PencilSingular: return "PencilSingular";
        case ErrorCode::RegimeViolation: return "RegimeViolation";
        case ErrorCode::PreconditionViolation: return "PreconditionViolation";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::SeparationInfeasible: return "SeparationInfeasible";
        case ErrorCode::InfeasibleParameters: return "InfeasibleParameters";
        case ErrorCode::OracleRegimeViolation: return "OracleRegimeViolation";
        case ErrorCode::NoiseBudgetExceeded: return "NoiseBudgetExceeded";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace specres

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace syzmirror {

enum class ErrorCode {
    ParseError = 1,
    EmptyFan,
    InvalidFan,
    NonPrimitiveRay,
    NonUnimodularCone,
    NoCYCovector,
    NonConvexSupport,
    UnsupportedFan,
    RayCollision,
    InconsistentPolytope,
    NotACone,
    CutoffMismatch,
    VarCountMismatch,
    NonzeroConstantTerm,
    NonUnitConstantTerm,
    ArityMismatch,
    NegativeIndex,
    UnderdeterminedExtraction,
    NoUsableRow,
    UnknownDivisor,
    MissingInvariantData,
    UnknownExample,
    CutoffTooSmall,
    InvalidArgument,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace syzmirror

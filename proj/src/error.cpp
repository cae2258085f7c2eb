#include "syzmirror/error.hpp"

namespace syzmirror {

std::string_view error_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyFan: return "EmptyFan";
    case ErrorCode::InvalidFan: return "InvalidFan";
    case ErrorCode::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorCode::NonUnimodularCone: return "NonUnimodularCone";
    case ErrorCode::NoCYCovector: return "NoCYCovector";
    case ErrorCode::NonConvexSupport: return "NonConvexSupport";
    case ErrorCode::UnsupportedFan: return "UnsupportedFan";
    case ErrorCode::RayCollision: return "RayCollision";
    case ErrorCode::InconsistentPolytope: return "InconsistentPolytope";
    case ErrorCode::NotACone: return "NotACone";
    case ErrorCode::CutoffMismatch: return "CutoffMismatch";
    case ErrorCode::VarCountMismatch: return "VarCountMismatch";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NegativeIndex: return "NegativeIndex";
    case ErrorCode::UnderdeterminedExtraction: return "UnderdeterminedExtraction";
    case ErrorCode::NoUsableRow: return "NoUsableRow";
    case ErrorCode::UnknownDivisor: return "UnknownDivisor";
    case ErrorCode::MissingInvariantData: return "MissingInvariantData";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace syzmirror

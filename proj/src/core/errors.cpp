#include "core/errors.hpp"

namespace tvharm {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::EmptySeries: return "EmptySeries";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NonMonotoneTimes: return "NonMonotoneTimes";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::IndexCollision: return "IndexCollision";
        case ErrorCode::DegenerateSpan: return "DegenerateSpan";
        case ErrorCode::DegenerateDomain: return "DegenerateDomain";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::OrderTooHigh: return "OrderTooHigh";
        case ErrorCode::EmptyBasis: return "EmptyBasis";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::DegenerateDof: return "DegenerateDof";
        case ErrorCode::NonPositiveResult: return "NonPositiveResult";
        case ErrorCode::AllFitsFailed: return "AllFitsFailed";
        case ErrorCode::UnknownComponent: return "UnknownComponent";
        case ErrorCode::TooFewReplicates: return "TooFewReplicates";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::WindowTransformUnderflow: return "WindowTransformUnderflow";
        case ErrorCode::NonStationary: return "NonStationary";
        case ErrorCode::NonPositivePsd: return "NonPositivePsd";
        case ErrorCode::BadRange: return "BadRange";
        case ErrorCode::BadPartition: return "BadPartition";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace tvharm

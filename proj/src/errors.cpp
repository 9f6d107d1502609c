#include "expseries/errors.hpp"

namespace expseries {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidDomain: return "InvalidDomain";
        case ErrorCode::PointNotOnBoundary: return "PointNotOnBoundary";
        case ErrorCode::EmptyDirectionSet: return "EmptyDirectionSet";
        case ErrorCode::InvalidSequence: return "InvalidSequence";
        case ErrorCode::NoTail: return "NoTail";
        case ErrorCode::ZeroArgument: return "ZeroArgument";
        case ErrorCode::NonPositiveRealPart: return "NonPositiveRealPart";
        case ErrorCode::NoExponentsInAngle: return "NoExponentsInAngle";
        case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::InvalidAngle: return "InvalidAngle";
        case ErrorCode::InvalidPolynomial: return "InvalidPolynomial";
        case ErrorCode::NonNegativeTopFrequency: return "NonNegativeTopFrequency";
        case ErrorCode::NotCertified: return "NotCertified";
        case ErrorCode::InvalidNodeSet: return "InvalidNodeSet";
        case ErrorCode::SizeMismatch: return "SizeMismatch";
        case ErrorCode::NearSingular: return "NearSingular";
        case ErrorCode::UnsupportedCoeffModel: return "UnsupportedCoeffModel";
        case ErrorCode::LimitPointNotOnBoundary: return "LimitPointNotOnBoundary";
        case ErrorCode::NodesOutsideDomain: return "NodesOutsideDomain";
        case ErrorCode::EmptyRealSection: return "EmptyRealSection";
        case ErrorCode::NotNested: return "NotNested";
        case ErrorCode::SchemaError: return "SchemaError";
    }
    return "Unknown";
}

}  // namespace expseries

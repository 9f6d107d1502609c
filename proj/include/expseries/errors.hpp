#pragma once

#include <stdexcept>
#include <string>

namespace expseries {

// Every failure mode the library reports deliberately.  CLI exit codes and
// tests key off the code, not the message text.
enum class ErrorCode {
    InvalidDomain,          // constituents describe an empty or non-open set
    PointNotOnBoundary,     // contact directions requested at an interior/exterior point
    EmptyDirectionSet,      // an operation needs at least one direction
    InvalidSequence,        // exponent list violates its invariants
    NoTail,                 // operation needs an asymptotic tail model
    ZeroArgument,           // 0 is never a valid exponent
    NonPositiveRealPart,    // growth-ratio test needs Re > 0 eventually
    NoExponentsInAngle,     // thinning found nothing inside the angle
    TruncationTooSmall,     // tail bound invalid: |z| too close to dropped zeros
    IndexOutOfRange,        // zero index outside the retained range
    InvalidAngle,           // sector parameters outside their ranges
    InvalidPolynomial,      // exponential polynomial invariants violated
    NonNegativeTopFrequency,// left-bound scan requires all frequencies < 0
    NotCertified,           // zero counting could not be certified
    InvalidNodeSet,         // interpolation nodes violate their invariants
    SizeMismatch,           // data vs. nodes vs. exponents disagree
    NearSingular,           // finite section numerically singular
    UnsupportedCoeffModel,  // unknown coefficient growth model
    LimitPointNotOnBoundary,// criterion precondition
    NodesOutsideDomain,     // criterion precondition
    EmptyRealSection,       // criterion precondition
    NotNested,              // monotonicity check got non-nested domains
    SchemaError,            // malformed JSON input
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }
    const char* name() const { return error_name(code_); }

  private:
    ErrorCode code_;
};

}  // namespace expseries

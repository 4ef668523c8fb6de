#pragma once

#include <stdexcept>
#include <string>

namespace tvharm {

// Error taxonomy shared by the C++ core and the C API. Each enumerator maps
// 1:1 onto a tvh_status code in include/tvharm/tvharm.h.
enum class ErrorCode {
    InvalidArgument,
    EmptySeries,
    LengthMismatch,
    NonMonotoneTimes,
    GridMismatch,
    IndexCollision,
    DegenerateSpan,
    DegenerateDomain,
    OutOfDomain,
    OrderTooHigh,
    EmptyBasis,
    ShapeMismatch,
    SingularSystem,
    DegenerateDof,
    NonPositiveResult,
    AllFitsFailed,
    UnknownComponent,
    TooFewReplicates,
    OutOfRange,
    WindowTransformUnderflow,
    NonStationary,
    NonPositivePsd,
    BadRange,
    BadPartition,
    Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool ok, ErrorCode code, const std::string& what) {
    if (!ok) fail(code, what);
}

}  // namespace tvharm

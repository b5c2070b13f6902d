#include "poincare/error.hpp"

namespace poincare {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::ToleranceNotReached: return "tolerance not reached";
    case ErrorCode::BracketFailure: return "bracket failure";
    case ErrorCode::StepUnderflow: return "step-size underflow";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Eval: return "evaluation error";
    case ErrorCode::SplitFailure: return "split failure";
    case ErrorCode::DepthExceeded: return "depth exceeded";
    case ErrorCode::Degenerate: return "degenerate input";
    case ErrorCode::Io: return "i/o error";
    }
    return "unknown error";
}

} // namespace poincare

#pragma once

#include <stdexcept>
#include <string>

namespace poincare {

enum class ErrorCode {
    Domain = 1,
    InvalidArgument,
    ToleranceNotReached,
    BracketFailure,
    StepUnderflow,
    Parse,
    Eval,
    SplitFailure,
    DepthExceeded,
    Degenerate,
    Io,
};

const char* to_string(ErrorCode code) noexcept;

/// Base exception of the library; the code drives the C API status mapping.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace poincare

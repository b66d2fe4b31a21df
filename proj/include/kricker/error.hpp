#pragma once

#include <stdexcept>
#include <string>

namespace kricker {

/// Error categories surfaced through the C API and the CLI exit codes.
enum class ErrorCode : int {
    misc = 1,
    parse = 2,
    math = 3,           // singular / degenerate / precondition failures
    indeterminate = 4,  // bounded relation search gave up
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline Error parse_error(const std::string& what) { return Error(ErrorCode::parse, what); }
inline Error math_error(const std::string& what) { return Error(ErrorCode::math, what); }
inline Error indeterminate_error(const std::string& what) {
    return Error(ErrorCode::indeterminate, what);
}

}  // namespace kricker

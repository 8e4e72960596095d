/**
 * @file error.hpp
 * @brief Error codes and the single exception type thrown by the library.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace magicrect {

enum class ErrorCode {
    InvalidFactor,
    GroupMismatch,
    NotASubgroup,
    IndexError,
    ShapeError,
    ModeError,
    Unsupported,
    UnsupportedParams,
    InvalidInput,
    InvalidOmega,
    PhiNotInUpsilon,
    InvalidDivisor,
    NoSuchObject,
    BudgetExceeded,
    InvalidParams,
    ConstructionFailed,
    ParseError,
};

const char* error_code_name(ErrorCode code);

class MagicRectError : public std::runtime_error {
public:
    MagicRectError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw MagicRectError(code, what);
}

}  // namespace magicrect

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hidd {

enum class ErrorCode {
    NonPositive,
    GainCountMismatch,
    UnsupportedOrder,
    Overflow,
    OrderTooSmall,
    NearZeroRadius,
    DeadZoneInput,
    NonFiniteState,
    NoClosedForm,
    BadRange,
    GainUnavailable,
    BadConfig,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (and tests) can branch on the kind of failure, not on the text.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hidd

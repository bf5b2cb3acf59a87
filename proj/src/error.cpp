#include "hidd/error.hpp"

namespace hidd {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositive: return "NonPositive";
        case ErrorCode::GainCountMismatch: return "GainCountMismatch";
        case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::OrderTooSmall: return "OrderTooSmall";
        case ErrorCode::NearZeroRadius: return "NearZeroRadius";
        case ErrorCode::DeadZoneInput: return "DeadZoneInput";
        case ErrorCode::NonFiniteState: return "NonFiniteState";
        case ErrorCode::NoClosedForm: return "NoClosedForm";
        case ErrorCode::BadRange: return "BadRange";
        case ErrorCode::GainUnavailable: return "GainUnavailable";
        case ErrorCode::BadConfig: return "BadConfig";
    }
    return "Unknown";
}

}  // namespace hidd

#include "hidd/rootfind.hpp"

namespace hidd {

std::string_view to_string(CaseKind k) noexcept {
    switch (k) {
        case CaseKind::NegBranch: return "neg_branch";
        case CaseKind::DeadZone: return "dead_zone";
        case CaseKind::PosBranch: return "pos_branch";
    }
    return "unknown";
}

std::string_view to_string(HalleyStatus s) noexcept {
    switch (s) {
        case HalleyStatus::Ok: return "ok";
        case HalleyStatus::DegenerateDenominator: return "degenerate_denominator";
        case HalleyStatus::NonFiniteIterate: return "non_finite_iterate";
    }
    return "unknown";
}

}  // namespace hidd

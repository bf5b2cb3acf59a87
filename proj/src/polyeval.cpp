#include "hidd/polyeval.hpp"

namespace hidd {

MonicPolynomial::MonicPolynomial(std::span<const double> coeffs, double constant)
    : n(static_cast<int>(coeffs.size())), const_term(constant) {
    const auto dim = static_cast<std::size_t>(n) + 1;
    a.assign(dim, 0.0);
    c.assign(dim + 1, 0.0);
    d.assign(dim + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
        a[i] = coeffs[static_cast<std::size_t>(i - 1)];
        c[i] = static_cast<double>(i) * a[i];
    }
    for (int i = 2; i <= n; ++i) {
        d[i] = static_cast<double>(i * (i - 1)) * a[i];
    }
    c[dim] = static_cast<double>(n + 1);
    d[dim] = static_cast<double>(n) * static_cast<double>(n + 1);
}

std::string_view to_string(EvalStrategy s) noexcept {
    switch (s) {
        case EvalStrategy::Direct: return "direct";
        case EvalStrategy::HornerSeparate: return "horner_separate";
        case EvalStrategy::HornerFused: return "horner_fused";
        case EvalStrategy::ShawTraub: return "shaw_traub";
    }
    return "unknown";
}

}  // namespace hidd

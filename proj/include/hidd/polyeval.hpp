#pragma once

#include <span>
#include <string_view>

#include "hidd/core_types.hpp"
#include "hidd/op_counter.hpp"

namespace hidd {

/// Monic degree-(n+1) polynomial
///   p(r) = r^{n+1} + a_n r^n + ... + a_1 r + const_term
/// together with its derivative coefficient tables.
///
/// `a`, `c` and `d` use the natural indexing of Tables: a[1..n] are read,
/// c[1..n+1] and d[2..n+1] hold the first/second derivative coefficients.
/// a[0] is never read; the constant comes from `const_term`.
struct PolySpec {
    int n = 0;
    std::span<const double> a;
    std::span<const double> c;
    std::span<const double> d;
    double const_term = 0.0;
};

inline PolySpec make_poly_spec(const Tables& t, double const_term) noexcept {
    return PolySpec{t.n, t.a, t.c, t.d, const_term};
}

/// Owning storage for an arbitrary monic polynomial (tests and tools).
struct MonicPolynomial {
    int n = 0;
    std::vector<double> a;  // a[0] unused
    std::vector<double> c;
    std::vector<double> d;
    double const_term = 0.0;

    /// `coeffs` = a_1..a_n.
    MonicPolynomial(std::span<const double> coeffs, double constant);

    PolySpec spec() const noexcept { return PolySpec{n, a, c, d, const_term}; }
};

struct PolyValue {
    double p = 0.0;
    double dp = 0.0;
    double ddp = 0.0;
};

enum class EvalStrategy { Direct, HornerSeparate, HornerFused, ShawTraub };

std::string_view to_string(EvalStrategy s) noexcept;

/// Smallest radius accepted by the Shaw-Traub kernel (it divides by r and r^2).
inline constexpr double kRadiusGuard = 1e-300;

/// Monomial evaluation. Every power r^i is rebuilt by repeated
/// multiplication, which is what makes this route quadratic in n.
/// Tally: adds 3n, muls 3n(n+1)/2.
template <Counter C>
PolyValue eval_direct(const PolySpec& poly, double r, C& ops) {
    const int n = poly.n;
    auto power = [&](int m) {
        double x = r;
        for (int k = 1; k < m; ++k) {
            x *= r;
            ops.mul();
        }
        return x;
    };

    PolyValue v;
    v.p = poly.const_term;
    for (int i = 1; i <= n; ++i) {
        v.p += poly.a[i] * power(i);
        ops.mul();
        ops.add();
    }
    v.p += power(n + 1);
    ops.add();

    v.dp = poly.c[1];
    for (int i = 2; i <= n + 1; ++i) {
        v.dp += poly.c[i] * power(i - 1);
        ops.mul();
        ops.add();
    }

    v.ddp = poly.d[2];
    for (int i = 3; i <= n + 1; ++i) {
        v.ddp += poly.d[i] * power(i - 2);
        ops.mul();
        ops.add();
    }
    return v;
}

/// Three independent Horner chains. Requires n >= 2.
/// Tally: adds 3n, muls 3n-1.
template <Counter C>
PolyValue eval_horner_separate(const PolySpec& poly, double r, C& ops) {
    const int n = poly.n;
    if (n < 2) {
        throw Error(ErrorCode::OrderTooSmall, "separate Horner evaluation needs n >= 2");
    }

    double p = r + poly.a[n];
    ops.add();
    for (int i = n - 1; i >= 1; --i) {
        p = p * r + poly.a[i];
    }
    ops.mul(n - 1);
    ops.add(n - 1);
    p = p * r + poly.const_term;
    ops.mul();
    ops.add();

    double dp = poly.c[n + 1];
    for (int i = n; i >= 1; --i) {
        dp = dp * r + poly.c[i];
    }
    ops.mul(n);
    ops.add(n);

    double ddp = poly.d[n + 1];
    for (int i = n; i >= 2; --i) {
        ddp = ddp * r + poly.d[i];
    }
    ops.mul(n - 1);
    ops.add(n - 1);

    return {p, dp, ddp};
}

/// Triple synthetic division: p, p' and p''/2 share one pass. Requires n >= 2.
/// Tally: adds 3n, muls 3n-2.
template <Counter C>
PolyValue eval_horner_fused(const PolySpec& poly, double r, C& ops) {
    const int n = poly.n;
    if (n < 2) {
        throw Error(ErrorCode::OrderTooSmall, "fused Horner evaluation needs n >= 2");
    }

    double F = r + poly.a[n];
    double dF = r + F;
    double ddF = r + dF;
    ops.add(3);
    for (int i = 0; i <= n - 3; ++i) {
        F = r * F + poly.a[n - i - 1];
        dF = r * dF + F;
        ddF = r * ddF + dF;
    }
    ops.mul(3 * (n - 2));
    ops.add(3 * (n - 2));

    const double F_last = r * F + poly.a[1];
    PolyValue v;
    v.p = r * F_last + poly.const_term;
    v.dp = r * dF + F_last;
    v.ddp = 2.0 * ddF;
    ops.mul(4);
    ops.add(3);
    return v;
}

/// Modified Shaw-Traub scheme: a power table t_i = r^i feeds three addition
/// chains that produce p, r p' and r^2 p''/2. Requires n >= 2 and r > kRadiusGuard.
/// Tally: adds 3n, muls 2n+3.
template <Counter C>
PolyValue eval_shaw_traub(const PolySpec& poly, double r, C& ops) {
    const int n = poly.n;
    if (n < 2) {
        throw Error(ErrorCode::OrderTooSmall, "Shaw-Traub evaluation needs n >= 2");
    }
    if (!(r > kRadiusGuard)) {
        throw Error(ErrorCode::NearZeroRadius, "Shaw-Traub evaluation needs r > 0");
    }

    // Stack buffer for the usual orders; heap only past that.
    constexpr int kStack = 64;
    double stack_pow[kStack + 1];
    std::vector<double> heap_pow;
    double* t = stack_pow;
    if (n > kStack) {
        heap_pow.resize(static_cast<std::size_t>(n) + 1);
        t = heap_pow.data();
    }

    t[1] = r;
    for (int i = 2; i <= n; ++i) {
        t[i] = t[i - 1] * r;
    }
    ops.mul(n - 1);

    // T0 = T_i^0, T1 = T_i^1, T2 = T_i^2 advanced in lockstep over i.
    // seed: T_0^0 = r^{n+1} stands in for T_1^1 and T_2^2 as well.
    const double seed = t[n] * r;
    ops.mul();

    // i = 1: only the j = 0 chain moves.
    double T0 = seed + poly.a[n] * t[n];
    double T1 = seed;
    double T2 = seed;
    ops.mul();
    ops.add();
    // i = 2: chains j = 0 and j = 1 move.
    {
        const double tm1 = poly.a[n - 1] * t[n - 1];
        T1 = T0 + T1;
        T0 = T0 + tm1;
        ops.mul();
        ops.add(2);
    }
    // i = 3..n+1: all three chains move. T_{i-1}^{-1} = a_{n-i+1} t_{n-i+1},
    // or the constant term at i = n+1.
    for (int i = 3; i <= n + 1; ++i) {
        const int deg = n - i + 1;
        double tm1;
        if (deg >= 1) {
            tm1 = poly.a[deg] * t[deg];
            ops.mul();
        } else {
            tm1 = poly.const_term;
        }
        T2 = T1 + T2;
        T1 = T0 + T1;
        T0 = T0 + tm1;
    }
    ops.add(3 * (n - 1));

    PolyValue v;
    v.p = T0;
    v.dp = T1 / t[1];
    v.ddp = 2.0 * (T2 / t[2]);
    ops.mul(3);
    return v;
}

/// Runtime dispatch with the documented fallbacks: for n = 1 every
/// strategy evaluates directly, and Shaw-Traub falls back to separate
/// Horner at r <= kRadiusGuard.
template <Counter C>
PolyValue evaluate(EvalStrategy s, const PolySpec& poly, double r, C& ops) {
    if (poly.n < 2) {
        return eval_direct(poly, r, ops);
    }
    switch (s) {
        case EvalStrategy::Direct: return eval_direct(poly, r, ops);
        case EvalStrategy::HornerSeparate: return eval_horner_separate(poly, r, ops);
        case EvalStrategy::HornerFused: return eval_horner_fused(poly, r, ops);
        case EvalStrategy::ShawTraub:
            if (r > kRadiusGuard) {
                return eval_shaw_traub(poly, r, ops);
            }
            return eval_horner_separate(poly, r, ops);
    }
    return eval_direct(poly, r, ops);
}

/// Compile-time dispatch used by the hot paths.
template <EvalStrategy S, Counter C>
inline PolyValue evaluate(const PolySpec& poly, double r, C& ops) {
    if constexpr (S == EvalStrategy::Direct) {
        return eval_direct(poly, r, ops);
    } else {
        if (poly.n < 2) {
            return eval_direct(poly, r, ops);
        }
        if constexpr (S == EvalStrategy::HornerSeparate) {
            return eval_horner_separate(poly, r, ops);
        } else if constexpr (S == EvalStrategy::HornerFused) {
            return eval_horner_fused(poly, r, ops);
        } else {
            if (r > kRadiusGuard) {
                return eval_shaw_traub(poly, r, ops);
            }
            return eval_horner_separate(poly, r, ops);
        }
    }
}

}  // namespace hidd

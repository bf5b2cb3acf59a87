#pragma once

#include <cmath>
#include <cstdlib>
#include <span>
#include <string_view>
#include <vector>

#include "hidd/core_types.hpp"
#include "hidd/op_counter.hpp"
#include "hidd/polyeval.hpp"

namespace hidd {

/// Which branch of the implicit correction applies at a step.
///  NegBranch: b_k >  a_0, xi = -1, sigma_tilde = -r0^{n+1}
///  DeadZone:  |b_k| <= a_0, xi = -b_k/a_0, sigma_tilde = 0
///  PosBranch: b_k < -a_0, xi = +1, sigma_tilde = +r0^{n+1}
enum class CaseKind { NegBranch, DeadZone, PosBranch };

std::string_view to_string(CaseKind k) noexcept;

struct RootCase {
    CaseKind kind = CaseKind::DeadZone;
    double xi = 0.0;
    double const_term = 0.0;  // a_0 -+ b_k; meaningless in the dead zone
};

enum class HalleyStatus { Ok, DegenerateDenominator, NonFiniteIterate };

std::string_view to_string(HalleyStatus s) noexcept;

struct HalleyOptions {
    int iterations = 3;
    // Stop as soon as |p(r)| <= 1e-12 (1 + |const_term|).
    bool early_stop = false;
    // Fill HalleyResult::residual with an extra, uncounted evaluation.
    bool residual = true;
    // When set, receives r_0 (the initial guess) followed by every iterate.
    std::vector<double>* iterates = nullptr;
};

struct HalleyResult {
    double r = 0.0;
    int iterations = 0;
    double residual = 0.0;
    HalleyStatus status = HalleyStatus::Ok;
};

struct RootResult {
    double r0 = 0.0;
    double sigma_tilde = 0.0;
    int iterations = 0;
    double residual = 0.0;
    HalleyStatus status = HalleyStatus::Ok;
};

/// b_k = -(z_0 - f_k) - sum_{l=1}^{n} tau^l/l! z_l.  Tally: n muls, n+1 adds.
template <Counter C>
double compute_bk(const Tables& t, std::span<const double> z, double f_k, C& ops) {
    double b = f_k - z[0];
    for (int l = 1; l <= t.n; ++l) {
        b -= t.phi[l] * z[l];
    }
    ops.mul(t.n);
    ops.add(t.n + 1);
    return b;
}

/// Always two comparisons. Off the dead zone one add forms the constant
/// term; in the dead zone one division forms xi.
template <Counter C>
RootCase classify(double b_k, double a0, C& ops) {
    const bool above = b_k > a0;
    const bool below = b_k < -a0;
    ops.cmp(2);
    if (above) {
        ops.add();
        return {CaseKind::NegBranch, -1.0, a0 - b_k};
    }
    if (below) {
        ops.add();
        return {CaseKind::PosBranch, 1.0, a0 + b_k};
    }
    ops.mul();
    return {CaseKind::DeadZone, -b_k / a0, 0.0};
}

inline RootCase classify(double b_k, double a0) {
    NullCounter none;
    return classify(b_k, a0, none);
}

/// r_00 = ((|b_k| - a_0)/2)^{1/(n+1)}. Throws Error{DeadZoneInput} when |b_k| <= a_0.
template <Counter C>
double initial_guess(double b_k, double a0, int n, C& ops) {
    const double excess = std::abs(b_k) - a0;
    if (!(excess > 0.0)) {
        throw Error(ErrorCode::DeadZoneInput, "initial guess requested inside the dead zone");
    }
    ops.add();
    ops.mul();
    ops.root();
    return std::pow(excess * 0.5, 1.0 / static_cast<double>(n + 1));
}

namespace detail {

template <Counter C, class Eval>
HalleyResult halley_loop(const PolySpec& poly, double r00, const HalleyOptions& opt, C& ops, Eval&& eval) {
    HalleyResult res;
    res.r = r00;
    if (opt.iterates) {
        opt.iterates->push_back(r00);
    }
    const double stop_tol = 1e-12 * (1.0 + std::abs(poly.const_term));
    for (int j = 0; j < opt.iterations; ++j) {
        const PolyValue v = eval(res.r, ops);
        if (opt.early_stop && std::abs(v.p) <= stop_tol) {
            break;
        }
        const double num = 2.0 * v.dp * v.p;
        const double den = 2.0 * (v.dp * v.dp) - v.ddp * v.p;
        ops.mul(5);
        ops.add();
        ops.cmp();
        if (den == 0.0) {
            res.status = HalleyStatus::DegenerateDenominator;
            break;
        }
        const double next = res.r - num / den;
        ops.mul();
        ops.add();
        ++res.iterations;
        if (!std::isfinite(next)) {
            res.status = HalleyStatus::NonFiniteIterate;
            res.r = next;
            break;
        }
        res.r = next;
        if (opt.iterates) {
            opt.iterates->push_back(next);
        }
    }
    if (opt.residual) {
        NullCounter none;
        res.residual = std::abs(eval(res.r, none).p);
    }
    return res;
}

}  // namespace detail

/// Halley iteration r <- r - 2 p' p / (2 p'^2 - p'' p).
/// Per iteration: one evaluation plus 2 adds, 6 muls and 1 comparison.
template <EvalStrategy S, Counter C>
HalleyResult halley_solve(const PolySpec& poly, double r00, C& ops, const HalleyOptions& opt = {}) {
    return detail::halley_loop(poly, r00, opt, ops, [&poly](double r, auto& c) { return evaluate<S>(poly, r, c); });
}

template <Counter C>
HalleyResult halley_solve(const PolySpec& poly, double r00, EvalStrategy s, C& ops, const HalleyOptions& opt = {}) {
    return detail::halley_loop(poly, r00, opt, ops, [&poly, s](double r, auto& c) { return evaluate(s, poly, r, c); });
}

/// Initial guess plus Halley for an off-dead-zone case; trivial for the dead zone.
template <EvalStrategy S, Counter C>
RootResult solve_root(const Tables& t, const RootCase& rc, double b_k, C& ops, const HalleyOptions& opt) {
    if (rc.kind == CaseKind::DeadZone) {
        return {};
    }
    const PolySpec poly = make_poly_spec(t, rc.const_term);
    const double r00 = initial_guess(b_k, t.a[0], t.n, ops);
    const HalleyResult h = halley_solve<S>(poly, r00, ops, opt);
    RootResult out;
    out.r0 = h.r;
    out.iterations = h.iterations;
    out.residual = h.residual;
    out.status = h.status;
    const double mag = std::pow(h.r, static_cast<double>(t.n + 1));
    out.sigma_tilde = rc.kind == CaseKind::NegBranch ? -mag : mag;
    return out;
}

}  // namespace hidd

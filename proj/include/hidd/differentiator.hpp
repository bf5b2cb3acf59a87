#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hidd/core_types.hpp"
#include "hidd/op_counter.hpp"
#include "hidd/polyeval.hpp"
#include "hidd/rootfind.hpp"

namespace hidd {

/// How the state update is evaluated once r0 is known.
///  SumOfPowers:  explicit sums of bstar * r0^m terms (cubic);
///  HornerInR:    one Horner chain in r0 per row (quadratic);
///  MatrixOracle: dense z' = Phi z + Bstar v(sigma_tilde), reference only.
enum class UpdateForm { SumOfPowers, HornerInR, MatrixOracle };

std::string_view to_string(UpdateForm f) noexcept;

struct StepTrace {
    long long k = 0;
    double f_k = 0.0;
    double b_k = 0.0;
    CaseKind kind = CaseKind::DeadZone;
    double r0 = 0.0;
    double sigma_tilde = 0.0;
    OpCounter ops;  // tallies charged by this step
};

/// z[i] estimates the i-th derivative of the signal at the last sample.
struct State {
    std::vector<double> z;
    long long k = 0;
    std::optional<StepTrace> last;
    std::vector<double> work;  // scratch for the untabulated path

    static State zeros(int n) { return State{std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0), 0, {}, {}}; }
};

namespace detail {

void throw_non_finite(long long k);

inline void check_finite(std::span<const double> z, long long k) {
    for (double v : z) {
        if (!std::isfinite(v)) {
            throw_non_finite(k);
        }
    }
}

// Row-wise updates run in ascending i so z can be overwritten in place:
// row i only reads z_j for j >= i.

template <bool Plus, Counter C>
void update_sum_of_powers(const Tables& t, std::span<double> z, double r0, C& ops) {
    const int n = t.n;
    for (int i = 0; i <= n; ++i) {
        double acc = z[i];
        for (int j = i; j <= n; ++j) {
            if (j > i) {
                acc += t.phi[j - i] * z[j];
                ops.mul();
                ops.add();
            }
            double term = t.bstar(i, j);
            const int m = n - j;
            if (m >= 1) {
                double pw = r0;
                for (int q = 1; q < m; ++q) {
                    pw *= r0;
                    ops.mul();
                }
                term *= pw;
                ops.mul();
            }
            acc = Plus ? acc + term : acc - term;
            ops.add();
        }
        z[i] = acc;
    }
}

template <bool Plus, Counter C>
void update_horner(const Tables& t, std::span<double> z, double r0, C& ops) {
    const int n = t.n;
    for (int i = 0; i <= n; ++i) {
        double s = z[i];
        double h = t.bstar(i, i);
        for (int j = i + 1; j <= n; ++j) {
            s += t.phi[j - i] * z[j];
            h = h * r0 + t.bstar(i, j);
        }
        ops.mul(2 * (n - i));
        ops.add(2 * (n - i) + 1);
        z[i] = Plus ? s + h : s - h;
    }
}

/// ratio = b_k / a_0 = -xi.
template <Counter C>
void update_dead_zone(const Tables& t, std::span<double> z, double b_k, double ratio, C& ops) {
    const int n = t.n;
    double z0 = b_k + z[0];
    for (int j = 1; j <= n; ++j) {
        z0 += t.phi[j] * z[j];
    }
    ops.mul(n);
    ops.add(n + 1);
    z[0] = z0;
    for (int i = 1; i <= n; ++i) {
        double s = z[i];
        for (int j = i + 1; j <= n; ++j) {
            s += t.phi[j - i] * z[j];
        }
        z[i] = s + t.bstar(i, n) * ratio;
        ops.mul(n - i + 1);
        ops.add(n - i + 1);
    }
}

}  // namespace detail

/// One sample through the differentiator, in place.
///
/// Computes b_k, classifies it, solves for r0 off the dead zone with three
/// Halley iterations using strategy S, and applies the branch update in
/// form F (SumOfPowers or HornerInR). Records the step in s.last.
/// Throws Error{NonFiniteState} if the new state is not finite.
template <EvalStrategy S, UpdateForm F, Counter C>
void advance(State& s, double f_k, const Tables& t, C& ops) {
    static_assert(F != UpdateForm::MatrixOracle, "use step_matrix_oracle for the dense reference");
    const OpCounter before = snapshot(ops);
    std::span<double> z(s.z);

    const double b_k = compute_bk(t, z, f_k, ops);
    const RootCase rc = classify(b_k, t.a[0], ops);

    StepTrace tr;
    tr.k = s.k;
    tr.f_k = f_k;
    tr.b_k = b_k;
    tr.kind = rc.kind;

    if (rc.kind == CaseKind::DeadZone) {
        detail::update_dead_zone(t, z, b_k, -rc.xi, ops);
    } else {
        HalleyOptions opt;
        opt.residual = false;
        const RootResult root = solve_root<S>(t, rc, b_k, ops, opt);
        tr.r0 = root.r0;
        tr.sigma_tilde = root.sigma_tilde;
        const bool plus = rc.kind == CaseKind::NegBranch;
        if constexpr (F == UpdateForm::SumOfPowers) {
            plus ? detail::update_sum_of_powers<true>(t, z, root.r0, ops)
                 : detail::update_sum_of_powers<false>(t, z, root.r0, ops);
        } else {
            plus ? detail::update_horner<true>(t, z, root.r0, ops) : detail::update_horner<false>(t, z, root.r0, ops);
        }
    }

    detail::check_finite(z, s.k);
    tr.ops = snapshot(ops) - before;
    s.last = tr;
    ++s.k;
}

/// Runtime-dispatched in-place step for SumOfPowers / HornerInR.
template <Counter C>
void advance(State& s, double f_k, const Tables& t, EvalStrategy strategy, UpdateForm form, C& ops) {
    const bool horner = form == UpdateForm::HornerInR;
    switch (strategy) {
        case EvalStrategy::Direct:
            horner ? advance<EvalStrategy::Direct, UpdateForm::HornerInR>(s, f_k, t, ops)
                   : advance<EvalStrategy::Direct, UpdateForm::SumOfPowers>(s, f_k, t, ops);
            break;
        case EvalStrategy::HornerSeparate:
            horner ? advance<EvalStrategy::HornerSeparate, UpdateForm::HornerInR>(s, f_k, t, ops)
                   : advance<EvalStrategy::HornerSeparate, UpdateForm::SumOfPowers>(s, f_k, t, ops);
            break;
        case EvalStrategy::HornerFused:
            horner ? advance<EvalStrategy::HornerFused, UpdateForm::HornerInR>(s, f_k, t, ops)
                   : advance<EvalStrategy::HornerFused, UpdateForm::SumOfPowers>(s, f_k, t, ops);
            break;
        case EvalStrategy::ShawTraub:
            horner ? advance<EvalStrategy::ShawTraub, UpdateForm::HornerInR>(s, f_k, t, ops)
                   : advance<EvalStrategy::ShawTraub, UpdateForm::SumOfPowers>(s, f_k, t, ops);
            break;
    }
}

/// Value-returning step; MatrixOracle routes to step_matrix_oracle and needs
/// the Params it was built from.
State step(const State& s, double f_k, const Params& params, const Tables& t, EvalStrategy strategy,
           UpdateForm form, OpCounter& ops);

/// Dense reference: z' = Phi z + Bstar v with
/// v_i = -lambda_{n-i} L^{(i+1)/(n+1)} |sigma_tilde|^{(n-i)/(n+1)} xi and
/// |sigma_tilde|^0 = 1. Gains come from `params`, not from the tables.
State step_matrix_oracle(const State& s, double f_k, const Params& params, const Tables& t, OpCounter& ops,
                         EvalStrategy strategy = EvalStrategy::Direct);

/// Same arithmetic as the Direct / SumOfPowers path, but every Taylor
/// weight, factorial, gain product and derivative coefficient is rebuilt
/// inside the step instead of read from Tables.
template <Counter C>
void advance_untabulated(State& s, double f_k, const Params& params, C& ops);

struct RunResult {
    State final_state;
    std::vector<StepTrace> trace;
};

/// Runs `samples` from a zero initial state. Errors are rethrown with the
/// failing sample index in the message.
RunResult run(const Params& params, std::span<const double> samples, EvalStrategy strategy, UpdateForm form);

}  // namespace hidd

#include "hidd/detail/untabulated.hpp"

#include "hidd/differentiator.hpp"

#include <cmath>
#include <string>

namespace hidd {

std::string_view to_string(UpdateForm f) noexcept {
    switch (f) {
        case UpdateForm::SumOfPowers: return "sum_of_powers";
        case UpdateForm::HornerInR: return "horner_in_r";
        case UpdateForm::MatrixOracle: return "matrix_oracle";
    }
    return "unknown";
}

namespace detail {

void throw_non_finite(long long k) {
    throw Error(ErrorCode::NonFiniteState, "state became non-finite at step " + std::to_string(k));
}

}  // namespace detail

State step(const State& s, double f_k, const Params& params, const Tables& t, EvalStrategy strategy,
           UpdateForm form, OpCounter& ops) {
    if (form == UpdateForm::MatrixOracle) {
        return step_matrix_oracle(s, f_k, params, t, ops, strategy);
    }
    State next = s;
    advance(next, f_k, t, strategy, form, ops);
    return next;
}

State step_matrix_oracle(const State& s, double f_k, const Params& params, const Tables& t, OpCounter& ops,
                         EvalStrategy strategy) {
    const OpCounter before = ops;
    const int n = params.n;
    const auto dim = static_cast<std::size_t>(n) + 1;

    const double b_k = compute_bk(t, s.z, f_k, ops);
    const RootCase rc = classify(b_k, t.a[0], ops);

    StepTrace tr;
    tr.k = s.k;
    tr.f_k = f_k;
    tr.b_k = b_k;
    tr.kind = rc.kind;

    double sigma = 0.0;
    if (rc.kind != CaseKind::DeadZone) {
        HalleyOptions opt;
        opt.residual = false;
        RootResult root;
        switch (strategy) {
            case EvalStrategy::Direct: root = solve_root<EvalStrategy::Direct>(t, rc, b_k, ops, opt); break;
            case EvalStrategy::HornerSeparate:
                root = solve_root<EvalStrategy::HornerSeparate>(t, rc, b_k, ops, opt);
                break;
            case EvalStrategy::HornerFused: root = solve_root<EvalStrategy::HornerFused>(t, rc, b_k, ops, opt); break;
            case EvalStrategy::ShawTraub: root = solve_root<EvalStrategy::ShawTraub>(t, rc, b_k, ops, opt); break;
        }
        sigma = root.sigma_tilde;
        tr.r0 = root.r0;
        tr.sigma_tilde = root.sigma_tilde;
    }

    std::vector<double> v(dim);
    const double abs_sigma = std::abs(sigma);
    const double np1 = static_cast<double>(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double gain = params.lambda[static_cast<std::size_t>(n - i)] * std::pow(params.L, (i + 1) / np1);
        const double mag = i == n ? 1.0 : std::pow(abs_sigma, (n - i) / np1);
        v[i] = -gain * mag * rc.xi;
        ops.mul(3);
        ops.root(2);
    }

    State next = s;
    for (std::size_t i = 0; i < dim; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            acc += t.Phi(i, j) * s.z[j] + t.Bstar(i, j) * v[j];
        }
        ops.mul(2 * dim);
        ops.add(2 * dim);
        next.z[i] = acc;
    }

    detail::check_finite(next.z, s.k);
    tr.ops = ops - before;
    next.last = tr;
    ++next.k;
    return next;
}

RunResult run(const Params& params, std::span<const double> samples, EvalStrategy strategy, UpdateForm form) {
    const Tables t = precompute(params);
    RunResult out;
    out.final_state = State::zeros(params.n);
    out.trace.reserve(samples.size());
    OpCounter ops;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        try {
            if (form == UpdateForm::MatrixOracle) {
                out.final_state = step_matrix_oracle(out.final_state, samples[k], params, t, ops, strategy);
            } else {
                advance(out.final_state, samples[k], t, strategy, form, ops);
            }
        } catch (const Error& e) {
            throw Error(e.code(), "sample " + std::to_string(k) + ": " + e.what());
        }
        out.trace.push_back(*out.final_state.last);
    }
    return out;
}

}  // namespace hidd

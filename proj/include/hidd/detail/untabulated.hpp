#pragma once

// Implementation of advance_untabulated; included from differentiator.hpp.

#include <cmath>

namespace hidd {

namespace detail {

// tau^m / m! rebuilt by running product: 2m operations.
template <Counter C>
double taylor_weight(double tau, int m, C& ops) {
    double x = 1.0;
    for (int q = 1; q <= m; ++q) {
        x = x * tau / static_cast<double>(q);
    }
    ops.mul(2 * m);
    return x;
}

// L^{m/(n+1)}; exact L at m = n+1.
template <Counter C>
double lipschitz_power(double L, int m, int n, C& ops) {
    if (m == n + 1) {
        return L;
    }
    ops.mul();
    ops.root();
    return std::pow(L, static_cast<double>(m) / static_cast<double>(n + 1));
}

}  // namespace detail

template <Counter C>
void advance_untabulated(State& s, double f_k, const Params& params, C& ops) {
    const OpCounter before = snapshot(ops);
    const int n = params.n;
    const double tau = params.tau;
    const double L = params.L;
    std::span<double> z(s.z);

    double b_k = f_k - z[0];
    for (int l = 1; l <= n; ++l) {
        b_k -= detail::taylor_weight(tau, l, ops) * z[l];
        ops.mul();
        ops.add();
    }
    ops.add();

    // a_l for this step.
    s.work.resize(static_cast<std::size_t>(n) + 1);
    std::span<double> a(s.work);
    for (int l = 0; l <= n; ++l) {
        const int m = n - l + 1;
        a[l] = detail::taylor_weight(tau, m, ops) * params.lambda[l] * detail::lipschitz_power(L, m, n, ops);
        ops.mul(2);
    }

    const RootCase rc = classify(b_k, a[0], ops);

    StepTrace tr;
    tr.k = s.k;
    tr.f_k = f_k;
    tr.b_k = b_k;
    tr.kind = rc.kind;

    auto injection = [&](int i, int j) {
        // bstar(i, j) without tables
        const double w = detail::taylor_weight(tau, j - i + 1, ops) * params.lambda[n - j] *
                         detail::lipschitz_power(L, j + 1, n, ops);
        ops.mul(2);
        return w;
    };

    if (rc.kind == CaseKind::DeadZone) {
        const double ratio = -rc.xi;
        double z0 = b_k + z[0];
        for (int j = 1; j <= n; ++j) {
            z0 += detail::taylor_weight(tau, j, ops) * z[j];
            ops.mul();
            ops.add();
        }
        ops.add();
        z[0] = z0;
        for (int i = 1; i <= n; ++i) {
            double acc = z[i];
            for (int j = i + 1; j <= n; ++j) {
                acc += detail::taylor_weight(tau, j - i, ops) * z[j];
                ops.mul();
                ops.add();
            }
            z[i] = acc + injection(i, n) * ratio;
            ops.mul();
            ops.add();
        }
    } else {
        // Direct evaluation with c_i = i a_i and d_i = i (i-1) a_i formed on the fly.
        auto eval = [&](double r, auto& c) {
            auto power = [&](int m) {
                double x = r;
                for (int q = 1; q < m; ++q) {
                    x *= r;
                    c.mul();
                }
                return x;
            };
            PolyValue v;
            v.p = rc.const_term;
            for (int i = 1; i <= n; ++i) {
                v.p += a[i] * power(i);
            }
            v.p += power(n + 1);
            c.mul(n);
            c.add(n + 1);

            v.dp = a[1];
            for (int i = 2; i <= n; ++i) {
                v.dp += (static_cast<double>(i) * a[i]) * power(i - 1);
            }
            v.dp += static_cast<double>(n + 1) * power(n);
            c.mul(2 * n);
            c.add(n);

            v.ddp = n >= 2 ? 2.0 * a[2] : 2.0;
            for (int i = 3; i <= n; ++i) {
                v.ddp += (static_cast<double>(i * (i - 1)) * a[i]) * power(i - 2);
            }
            if (n >= 2) {
                v.ddp += static_cast<double>(n) * static_cast<double>(n + 1) * power(n - 1);
            }
            c.mul(2 * n - 1);
            c.add(n - 1);
            return v;
        };

        PolySpec poly;
        poly.n = n;
        poly.const_term = rc.const_term;
        HalleyOptions opt;
        opt.residual = false;
        const double r00 = initial_guess(b_k, a[0], n, ops);
        const HalleyResult h = detail::halley_loop(poly, r00, opt, ops, eval);
        const double r0 = h.r;
        tr.r0 = r0;
        const double mag = std::pow(r0, static_cast<double>(n + 1));
        tr.sigma_tilde = rc.kind == CaseKind::NegBranch ? -mag : mag;

        const bool plus = rc.kind == CaseKind::NegBranch;
        for (int i = 0; i <= n; ++i) {
            double acc = z[i];
            for (int j = i; j <= n; ++j) {
                if (j > i) {
                    acc += detail::taylor_weight(tau, j - i, ops) * z[j];
                    ops.mul();
                    ops.add();
                }
                double term = injection(i, j);
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
                acc = plus ? acc + term : acc - term;
                ops.add();
            }
            z[i] = acc;
        }
    }

    detail::check_finite(z, s.k);
    tr.ops = snapshot(ops) - before;
    s.last = tr;
    ++s.k;
}

}  // namespace hidd

#include "hidd/core_types.hpp"

#include <array>
#include <cmath>
#include <string>

namespace hidd {

namespace {

constexpr std::array<double, 8> kDefaultGains = {1.1, 1.5, 2.0, 3.0, 5.0, 7.0, 10.0, 12.0};

const std::vector<std::vector<double>> kNonRecursiveGains = {
    {1.1, 1.5},
    {1.1, 2.12, 2.0},
    {1.1, 3.06, 4.16, 3.0},
    {1.1, 4.57, 9.30, 10.03, 5.0},
    {1.1, 6.75, 20.26, 32.24, 23.72, 7.0},
    {1.1, 9.91, 43.65, 101.96, 110.08, 47.69, 8.0},
    {1.1, 14.13, 88.78, 295.74, 455.40, 281.37, 84.14, 10.0},
};

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw Error(ErrorCode::Overflow, std::string(what) + " is not finite");
    }
}

}  // namespace

Params make_params(int n, double L, std::vector<double> lambda, double tau) {
    if (n < 1) {
        throw Error(ErrorCode::NonPositive, "order n must be >= 1, got " + std::to_string(n));
    }
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw Error(ErrorCode::NonPositive, "Lipschitz constant L must be > 0");
    }
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw Error(ErrorCode::NonPositive, "sampling period tau must be > 0");
    }
    if (lambda.size() != static_cast<std::size_t>(n) + 1) {
        throw Error(ErrorCode::GainCountMismatch,
                    "expected " + std::to_string(n + 1) + " gains, got " + std::to_string(lambda.size()));
    }
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (!(lambda[i] > 0.0) || !std::isfinite(lambda[i])) {
            throw Error(ErrorCode::NonPositive, "gain lambda_" + std::to_string(i) + " must be > 0");
        }
    }
    return Params{n, L, std::move(lambda), tau};
}

std::vector<double> default_gains(int n) {
    if (n < 1 || n + 1 > static_cast<int>(kDefaultGains.size())) {
        throw Error(ErrorCode::UnsupportedOrder,
                    "no default gains for n = " + std::to_string(n) + " (supported: 1..7)");
    }
    return {kDefaultGains.begin(), kDefaultGains.begin() + n + 1};
}

std::vector<double> nonrecursive_gains(int n) {
    if (n < 1 || n > static_cast<int>(kNonRecursiveGains.size())) {
        throw Error(ErrorCode::UnsupportedOrder,
                    "no non-recursive gains for n = " + std::to_string(n) + " (supported: 1..7)");
    }
    return kNonRecursiveGains[static_cast<std::size_t>(n - 1)];
}

Tables precompute(const Params& params) {
    const int n = params.n;
    const auto dim = static_cast<std::size_t>(n) + 1;

    Tables t;
    t.n = n;
    t.tau = params.tau;
    t.root_exponent = 1.0 / static_cast<double>(n + 1);

    // taylor[m] = tau^m / m!, m = 0..n+1, by running product.
    std::vector<double> taylor(dim + 1);
    taylor[0] = 1.0;
    for (std::size_t m = 1; m <= dim; ++m) {
        taylor[m] = taylor[m - 1] * params.tau / static_cast<double>(m);
    }
    t.phi.assign(taylor.begin(), taylor.begin() + static_cast<std::ptrdiff_t>(dim));

    // lpow[m] = L^{m/(n+1)}, m = 0..n+1
    std::vector<double> lpow(dim + 1);
    for (std::size_t m = 0; m <= dim; ++m) {
        lpow[m] = std::pow(params.L, static_cast<double>(m) / static_cast<double>(dim));
    }
    lpow[dim] = params.L;

    t.a.resize(dim);
    for (int l = 0; l <= n; ++l) {
        const auto m = static_cast<std::size_t>(n - l + 1);
        t.a[l] = taylor[m] * params.lambda[l] * lpow[m];
    }

    t.Phi = SquareMatrix(dim);
    t.Bstar = SquareMatrix(dim);
    t.bstar = SquareMatrix(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            t.Phi(i, j) = taylor[j - i];
            t.Bstar(i, j) = taylor[j - i + 1];
            t.bstar(i, j) = taylor[j - i + 1] * params.lambda[static_cast<std::size_t>(n) - j] * lpow[j + 1];
        }
    }

    t.c.assign(dim + 1, 0.0);
    t.d.assign(dim + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
        t.c[i] = static_cast<double>(i) * t.a[i];
    }
    t.c[dim] = static_cast<double>(n + 1);
    for (int i = 2; i <= n; ++i) {
        t.d[i] = static_cast<double>(i * (i - 1)) * t.a[i];
    }
    t.d[dim] = static_cast<double>(n) * static_cast<double>(n + 1);

    for (double v : t.a) require_finite(v, "a_l");
    for (double v : t.phi) require_finite(v, "phi_i");
    for (double v : t.bstar.data()) require_finite(v, "bstar");
    for (double v : t.Bstar.data()) require_finite(v, "Bstar");
    return t;
}

}  // namespace hidd

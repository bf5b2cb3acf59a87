#include <cmath>
#include <random>

#include "doctest.h"
#include "hidd/core_types.hpp"
#include "hidd/error.hpp"
#include "hidd/validation.hpp"

using namespace hidd;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected hidd::Error");
    return ErrorCode::BadConfig;
}

}  // namespace

TEST_CASE("make_params validates its inputs") {
    const Params p = make_params(1, 1.0, {1.1, 1.5}, 0.5);
    CHECK(p.n == 1);
    CHECK(p.lambda.size() == 2);

    CHECK(code_of([] { make_params(3, 1.0, {1.1, 1.5}, 0.001); }) == ErrorCode::GainCountMismatch);
    CHECK(code_of([] { make_params(2, -1.0, {1, 1, 1}, 0.001); }) == ErrorCode::NonPositive);
    CHECK(code_of([] { make_params(0, 1.0, {1.0}, 0.001); }) == ErrorCode::NonPositive);
    CHECK(code_of([] { make_params(1, 1.0, {1.0, 1.0}, 0.0); }) == ErrorCode::NonPositive);
    CHECK(code_of([] { make_params(1, 1.0, {1.0, -1.0}, 0.1); }) == ErrorCode::NonPositive);
}

TEST_CASE("default gains table") {
    CHECK(default_gains(1) == std::vector<double>{1.1, 1.5});
    CHECK(default_gains(3) == std::vector<double>{1.1, 1.5, 2, 3});
    CHECK(default_gains(7).size() == 8);
    CHECK(code_of([] { default_gains(10); }) == ErrorCode::UnsupportedOrder);
    CHECK(code_of([] { nonrecursive_gains(8); }) == ErrorCode::UnsupportedOrder);
    for (int n = 1; n <= 7; ++n) {
        CHECK(nonrecursive_gains(n).size() == static_cast<std::size_t>(n + 1));
    }
}

TEST_CASE("precompute, first order by hand") {
    const Tables t = precompute(make_params(1, 1.0, {1.1, 1.5}, 0.5));
    CHECK(t.a[0] == doctest::Approx(0.1375).epsilon(1e-15));
    CHECK(t.a[1] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(t.phi == std::vector<double>{1.0, 0.5});
    CHECK(t.Phi(0, 0) == 1.0);
    CHECK(t.Phi(0, 1) == 0.5);
    CHECK(t.Phi(1, 0) == 0.0);
    CHECK(t.Phi(1, 1) == 1.0);
    CHECK(t.bstar(0, 1) == doctest::Approx(t.a[0]).epsilon(1e-15));
    CHECK(t.root_exponent == 0.5);
}

TEST_CASE("derivative coefficients at the leading term") {
    for (int n = 1; n <= 12; ++n) {
        const Tables t = precompute(make_params(n, 1.0, std::vector<double>(n + 1, 1.0), 0.01 * n));
        CHECK(t.c[n + 1] == n + 1);
        CHECK(t.d[n + 1] == n * (n + 1));
        for (int i = 1; i <= n; ++i) {
            CHECK(t.c[i] == i * t.a[i]);
            CHECK(t.d[i] == i * (i - 1) * t.a[i]);
        }
    }
}

TEST_CASE("last bstar column is Bstar scaled by lambda_0 L") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Params p = validation::random_params(rng, 1, 12);
        const Tables t = precompute(p);
        const double scale = p.lambda[0] * p.L;
        const auto n = static_cast<std::size_t>(p.n);
        double taylor = 1.0;
        for (std::size_t i = n + 1; i-- > 0;) {
            // column n, row i holds tau^{n-i+1}/(n-i+1)! * lambda_0 * L
            const std::size_t m = n - i + 1;
            taylor = 1.0;
            for (std::size_t q = 1; q <= m; ++q) taylor *= p.tau / static_cast<double>(q);
            CHECK(validation::close(t.bstar(i, n), taylor * scale, 1e-14));
            CHECK(validation::close(t.bstar(i, n), t.Bstar(i, n) * scale, 1e-14));
        }
    }
}

TEST_CASE("Phi propagates a polynomial's derivative stack exactly") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int n = 1; n <= 10; ++n) {
        const double tau = 0.05;
        const Tables t = precompute(make_params(n, 1.0, std::vector<double>(n + 1, 1.0), tau));
        std::vector<double> g(n + 1);
        for (double& v : g) v = coef(rng);
        // derivative j of sum g_m t^m at time t0
        auto deriv = [&](int j, double t0) {
            double s = 0.0;
            for (int m = j; m <= n; ++m) {
                double fall = 1.0;
                for (int q = 0; q < j; ++q) fall *= m - q;
                s += g[m] * fall * std::pow(t0, m - j);
            }
            return s;
        };
        const double t0 = 0.3;
        for (int i = 0; i <= n; ++i) {
            double pred = 0.0;
            for (int j = 0; j <= n; ++j) pred += t.Phi(i, j) * deriv(j, t0);
            const double exact = deriv(i, t0 + tau);
            CHECK(validation::close(pred, exact, 1e-12, 1e-12));
        }
    }
}

TEST_CASE("precompute is deterministic") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Params p = validation::random_params(rng, 1, 12);
        CHECK(precompute(p) == precompute(p));
    }
}

TEST_CASE("precompute handles order 30 and rejects overflow") {
    const Tables t = precompute(make_params(30, 10.0, std::vector<double>(31, 2.0), 1e-3));
    CHECK(t.a.size() == 31);
    CHECK(std::isfinite(t.c[31]));
    CHECK(code_of([] { precompute(make_params(2, 1e300, {1e300, 1e300, 1e300}, 1e10)); }) == ErrorCode::Overflow);
}

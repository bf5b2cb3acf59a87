#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "hidd/error.hpp"
#include "hidd/rootfind.hpp"
#include "hidd/validation.hpp"

using namespace hidd;

namespace {

Tables first_order() { return precompute(make_params(1, 1.0, {1.1, 1.5}, 0.5)); }

}  // namespace

TEST_CASE("compute_bk by hand") {
    NullCounter none;
    const std::vector<double> z1{1.0, 2.0};
    CHECK(compute_bk(first_order(), z1, 1.0, none) == -1.0);

    for (int n = 1; n <= 6; ++n) {
        const Tables t = precompute(make_params(n, 1.0, std::vector<double>(n + 1, 1.0), 0.1));
        const std::vector<double> zero(n + 1, 0.0);
        CHECK(compute_bk(t, zero, 0.0, none) == 0.0);
    }

    const Tables t2 = precompute(make_params(2, 1.0, {1.0, 1.0, 1.0}, 1.0));
    const std::vector<double> z2{0.0, 1.0, 2.0};
    OpCounter ops;
    CHECK(compute_bk(t2, z2, 0.0, ops) == -2.0);
    CHECK(ops == OpCounter{3, 2, 0, 0});
}

TEST_CASE("classify by hand") {
    const RootCase neg = classify(0.2, 0.1375);
    CHECK(neg.kind == CaseKind::NegBranch);
    CHECK(neg.xi == -1.0);
    CHECK(neg.const_term == doctest::Approx(-0.0625).epsilon(1e-14));

    const RootCase edge = classify(0.1375, 0.1375);
    CHECK(edge.kind == CaseKind::DeadZone);
    CHECK(edge.xi == -1.0);

    const RootCase pos = classify(-0.2, 0.1375);
    CHECK(pos.kind == CaseKind::PosBranch);
    CHECK(pos.xi == 1.0);
    CHECK(pos.const_term == doctest::Approx(-0.0625).epsilon(1e-14));

    OpCounter ops;
    classify(0.0, 1.0, ops);
    CHECK(ops == OpCounter{0, 1, 0, 2});
}

TEST_CASE("classify is total and continuous") {
    for (double a0 : {1e-6, 0.01, 0.1375, 1.0, 50.0}) {
        for (int k = -400; k <= 400; ++k) {
            const double b = a0 * k / 200.0;
            const RootCase rc = classify(b, a0);
            if (b > a0) {
                CHECK(rc.kind == CaseKind::NegBranch);
                CHECK(rc.const_term < 0.0);
            } else if (b < -a0) {
                CHECK(rc.kind == CaseKind::PosBranch);
                CHECK(rc.const_term < 0.0);
            } else {
                CHECK(rc.kind == CaseKind::DeadZone);
                CHECK(rc.xi >= -1.0);
                CHECK(rc.xi <= 1.0);
            }
        }
        const double inside_hi = std::nextafter(a0, 0.0);
        CHECK(classify(inside_hi, a0).xi == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(classify(-inside_hi, a0).xi == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(classify(std::nextafter(a0, 1e9), a0).xi == -1.0);
        CHECK(classify(-std::nextafter(a0, 1e9), a0).xi == 1.0);
    }
}

TEST_CASE("initial guess") {
    OpCounter ops;
    CHECK(initial_guess(2.5, 0.5, 1, ops) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(initial_guess(-6.5, 0.5, 1, ops) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(ops == OpCounter{2, 2, 2, 0});
    try {
        initial_guess(0.5, 0.5, 3, ops);
        FAIL("expected DeadZoneInput");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DeadZoneInput);
    }
}

TEST_CASE("Halley on r^2 + r - 6") {
    const MonicPolynomial m(std::vector<double>{1.0}, -6.0);
    NullCounter none;
    HalleyOptions one;
    one.iterations = 1;
    const HalleyResult h1 = halley_solve(m.spec(), std::sqrt(3.0), EvalStrategy::Direct, none, one);
    CHECK(h1.r == doctest::Approx(1.99910).epsilon(1e-5));
    CHECK(h1.iterations == 1);

    const HalleyResult h3 = halley_solve(m.spec(), std::sqrt(3.0), EvalStrategy::Direct, none);
    CHECK(std::abs(h3.r - 2.0) <= 1e-9);
    CHECK(h3.status == HalleyStatus::Ok);
}

TEST_CASE("Halley stays on an exact root") {
    const MonicPolynomial m(std::vector<double>{1.0}, -2.0);
    std::vector<double> its;
    HalleyOptions opt;
    opt.iterates = &its;
    NullCounter none;
    const HalleyResult h = halley_solve(m.spec(), 1.0, EvalStrategy::Direct, none, opt);
    CHECK(h.r == 1.0);
    CHECK(h.residual == 0.0);
    REQUIRE(its.size() == 4);
    for (double r : its) CHECK(r == 1.0);
}

TEST_CASE("Halley iteration overhead") {
    const MonicPolynomial m(std::vector<double>(4, 1.0), -3.0);
    for (auto s : {EvalStrategy::Direct, EvalStrategy::HornerSeparate, EvalStrategy::HornerFused,
                   EvalStrategy::ShawTraub}) {
        OpCounter eval;
        evaluate(s, m.spec(), 0.8, eval);
        OpCounter ops;
        halley_solve(m.spec(), 0.8, s, ops);
        OpCounter expect;
        for (int j = 0; j < 3; ++j) {
            expect += eval;
            expect += OpCounter{2, 6, 0, 1};
        }
        CHECK(ops == expect);
    }
}

TEST_CASE("Halley converges monotonically and fast on the HIDD corpus") {
    std::mt19937_64 rng(4242);
    double worst_k = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto hc = validation::random_hidd_case(rng, 2, 8);
        const PolySpec poly = make_poly_spec(hc.tables, hc.root_case.const_term);
        const double hi = std::pow(std::abs(hc.b_k) - hc.tables.a[0], 1.0 / (hc.params.n + 1));
        const double star = validation::bisect_root(poly, hi);
        NullCounter none;
        const double r00 = initial_guess(hc.b_k, hc.tables.a[0], hc.params.n, none);

        std::vector<double> its;
        HalleyOptions opt;
        opt.iterates = &its;
        const HalleyResult h = halley_solve(poly, r00, EvalStrategy::HornerSeparate, none, opt);
        CHECK(h.status == HalleyStatus::Ok);
        CHECK(h.residual <= 1e-9 * (1.0 + std::abs(poly.const_term)));

        // errors relative to r*: the root ranges over many decades, and an
        // absolute gate of 0.1 is nowhere near the asymptotic regime when r* ~ 1e-5
        const double floor = 64 * std::numeric_limits<double>::epsilon();
        for (std::size_t j = 0; j + 1 < its.size(); ++j) {
            const double e0 = std::abs(its[j] - star) / star;
            const double e1 = std::abs(its[j + 1] - star) / star;
            CHECK(e1 <= e0 + floor);
            if (e0 < 0.1 && e0 > floor && e1 > floor) {
                worst_k = std::max(worst_k, e1 / std::pow(e0, 2.5));
            }
        }

        for (auto s : {EvalStrategy::Direct, EvalStrategy::HornerFused, EvalStrategy::ShawTraub}) {
            const HalleyResult other = halley_solve(poly, r00, s, none);
            CHECK(validation::close(other.r, h.r, 1e-9, 1e-300));
        }
    }
    CHECK(worst_k <= 100.0);
}

TEST_CASE("solve_root signs sigma by branch") {
    const Tables t = first_order();
    NullCounter none;
    const RootCase neg = classify(3.0, t.a[0]);
    const RootResult rn = solve_root<EvalStrategy::Direct>(t, neg, 3.0, none, {});
    CHECK(rn.r0 > 0.0);
    CHECK(rn.sigma_tilde == doctest::Approx(-rn.r0 * rn.r0).epsilon(1e-14));

    const RootCase pos = classify(-3.0, t.a[0]);
    const RootResult rp = solve_root<EvalStrategy::Direct>(t, pos, -3.0, none, {});
    CHECK(rp.sigma_tilde == doctest::Approx(rp.r0 * rp.r0).epsilon(1e-14));

    const RootResult rd = solve_root<EvalStrategy::Direct>(t, classify(0.0, t.a[0]), 0.0, none, {});
    CHECK(rd.r0 == 0.0);
    CHECK(rd.sigma_tilde == 0.0);
}

#include "hidd/validation.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <map>
#include <chrono>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "hidd/bench.hpp"
#include "hidd/complexity.hpp"
#include "hidd/differentiator.hpp"
#include "hidd/signal.hpp"

namespace hidd::validation {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

template <class F>
CriterionResult timed(int id, std::string name, double budget, F&& body) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.budget_seconds = budget;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.passed = body(r.detail);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > budget) {
        r.passed = false;
        r.detail += fmt::format(" [over budget: {:.2f} s > {} s]", r.seconds, budget);
    }
    return r;
}

template <Counter C>
PolyValue eval_with(EvalStrategy s, const PolySpec& poly, double r, C& ops) {
    switch (s) {
        case EvalStrategy::Direct: return eval_direct(poly, r, ops);
        case EvalStrategy::HornerSeparate: return eval_horner_separate(poly, r, ops);
        case EvalStrategy::HornerFused: return eval_horner_fused(poly, r, ops);
        case EvalStrategy::ShawTraub: return eval_shaw_traub(poly, r, ops);
    }
    return {};
}

constexpr EvalStrategy kStrategies[] = {EvalStrategy::Direct, EvalStrategy::HornerSeparate,
                                        EvalStrategy::HornerFused, EvalStrategy::ShawTraub};

// A random state and a sample that puts b_k in the requested case.
struct StepSetup {
    State state;
    double f_k = 0.0;
};

StepSetup random_step(std::mt19937_64& rng, const Tables& t, CaseKind want) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    StepSetup s;
    s.state = State::zeros(t.n);
    for (auto& v : s.state.z) {
        v = unit(rng) * log_uniform(rng, 1e-2, 1e2);
    }
    const double a0 = t.a[0];
    double b = 0.0;
    switch (want) {
        case CaseKind::DeadZone: b = a0 * unit(rng); break;
        case CaseKind::NegBranch: b = a0 + log_uniform(rng, 1e-8, 1.0); break;
        case CaseKind::PosBranch: b = -a0 - log_uniform(rng, 1e-8, 1.0); break;
    }
    double pred = s.state.z[0];
    for (int l = 1; l <= t.n; ++l) {
        pred += t.phi[l] * s.state.z[l];
    }
    s.f_k = b + pred;
    return s;
}

}  // namespace

double bisect_root(const PolySpec& poly, double hi) {
    auto p = [&](double r) {
        long double acc = 1.0L;
        for (int i = poly.n; i >= 1; --i) {
            acc = acc * r + static_cast<long double>(poly.a[i]);
        }
        return acc * r + static_cast<long double>(poly.const_term);
    };
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (p(mid) < 0.0L ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

PolyValue reference_eval(const PolySpec& poly, double r) {
    const int n = poly.n;
    PolyValue v;
    v.p = std::pow(r, n + 1) + poly.const_term;
    v.dp = (n + 1) * std::pow(r, n);
    v.ddp = (n + 1) * n * std::pow(r, n - 1);
    for (int i = 1; i <= n; ++i) {
        v.p += poly.a[i] * std::pow(r, i);
        v.dp += i * poly.a[i] * std::pow(r, i - 1);
        if (i >= 2) {
            v.ddp += i * (i - 1) * poly.a[i] * std::pow(r, i - 2);
        }
    }
    return v;
}

bool close(double a, double b, double rel, double abs_floor) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

bool close_vec(std::span<const double> a, std::span<const double> b, double rel) {
    if (a.size() != b.size()) return false;
    double scale = 0.0;
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
        diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    return diff <= rel * scale;
}

std::vector<double> extended_gains(int n) {
    static const std::vector<double> table = {1.1, 1.5, 2, 3, 5, 7, 10, 12, 14, 17, 20};
    if (n < 1 || n + 1 > static_cast<int>(table.size())) {
        throw Error(ErrorCode::GainUnavailable, "no extended gains for n = " + std::to_string(n));
    }
    return {table.begin(), table.begin() + n + 1};
}

RandomPoly random_poly(std::mt19937_64& rng, int n_lo, int n_hi) {
    std::uniform_int_distribution<int> order(n_lo, n_hi);
    std::uniform_real_distribution<double> coef(0.0, 10.0);
    std::uniform_real_distribution<double> cst(-50.0, -0.01);
    const int n = order(rng);
    std::vector<double> a(static_cast<std::size_t>(n));
    double biggest = 0.0;
    for (auto& v : a) {
        do {
            v = coef(rng);
        } while (v == 0.0);
        biggest = std::max(biggest, v);
    }
    const double c = cst(rng);
    biggest = std::max(biggest, std::abs(c));
    const double cauchy = 1.0 + biggest;
    std::uniform_real_distribution<double> radius(0.0, cauchy);
    double r = 0.0;
    do {
        r = radius(rng);
    } while (!(r > kRadiusGuard));
    return RandomPoly{MonicPolynomial(a, c), r};
}

Params random_params(std::mt19937_64& rng, int n_lo, int n_hi) {
    std::uniform_int_distribution<int> order(n_lo, n_hi);
    std::uniform_real_distribution<double> gain(1.0, 12.0);
    const int n = order(rng);
    std::vector<double> lambda(static_cast<std::size_t>(n) + 1);
    for (auto& l : lambda) l = gain(rng);
    return make_params(n, log_uniform(rng, 0.5, 10.0), std::move(lambda), log_uniform(rng, 1e-3, 1e-1));
}

HiddCase random_hidd_case(std::mt19937_64& rng, int n_lo, int n_hi) {
    HiddCase c;
    c.params = random_params(rng, n_lo, n_hi);
    c.tables = precompute(c.params);
    const double excess = log_uniform(rng, 1e-10, 10.0);
    const double sign = std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
    c.b_k = sign * (c.tables.a[0] + excess);
    c.root_case = classify(c.b_k, c.tables.a[0]);
    return c;
}

CriterionResult criterion_closed_forms() {
    return timed(1, "closed-form reproduction", 1.0, [](std::string& detail) {
        const ComplexityTable table = complexity_table(2, 30);
        std::ostringstream csv;
        write_complexity_csv(csv, table);
        // Read the totals back out of the emitted CSV.
        std::istringstream in(csv.str());
        std::string line;
        std::getline(in, line);
        std::map<int, std::array<long long, 4>> rows;
        while (std::getline(in, line)) {
            std::array<long long, 5> v{};
            std::sscanf(line.c_str(), "%lld,%lld,%lld,%lld,%lld", &v[0], &v[1], &v[2], &v[3], &v[4]);
            rows[static_cast<int>(v[0])] = {v[1], v[2], v[3], v[4]};
        }
        const auto& r4 = rows.at(4);
        const auto& r5 = rows.at(5);
        const auto& r7 = rows.at(7);
        const bool ok = rows.size() == 29 && r7[1] == 312 && r7[0] == 552 && r7[0] - r7[1] == 240 &&
                        r4[0] < std::min(r4[2], r4[3]) && r5[0] > std::max(r5[2], r5[3]);
        detail = fmt::format("T_half(7)={} T_direct(7)={} diff={}; n=4 direct={} full={} shaw={}; n=5 direct={} "
                             "full={} shaw={}",
                             r7[1], r7[0], r7[0] - r7[1], r4[0], r4[2], r4[3], r5[0], r5[2], r5[3]);
        return ok;
    });
}

CriterionResult criterion_counter_formula() {
    return timed(2, "counter vs formula", 5.0, [](std::string& detail) {
        std::mt19937_64 rng(7);
        int worst_adds = 0;
        int worst_muls = 0;
        bool ok = true;
        for (int n = 2; n <= 15; ++n) {
            std::vector<double> coeffs(static_cast<std::size_t>(n), 1.5);
            const MonicPolynomial poly(coeffs, -3.0);
            for (EvalStrategy s : {EvalStrategy::Direct, EvalStrategy::HornerSeparate}) {
                const Method m = s == EvalStrategy::Direct ? Method::DirectEval : Method::HalfHorner;
                const CostRow row = cost(m, n);
                OpCounter first;
                eval_with(s, poly.spec(), 0.7, first);
                OpCounter second;
                eval_with(s, poly.spec(), 2.3, second);
                const auto da = static_cast<long long>(first.adds) - *row.adds_eval_per_iter;
                const auto dm = static_cast<long long>(first.muls) - *row.muls_eval_per_iter;
                worst_adds = std::max(worst_adds, static_cast<int>(std::llabs(da)));
                worst_muls = std::max(worst_muls, static_cast<int>(std::llabs(dm)));
                ok = ok && first == second && std::llabs(da) <= 2 && std::llabs(dm) <= 2;
            }

            const Tables t = precompute(make_params(n, 2.0, std::vector<double>(static_cast<std::size_t>(n) + 1, 2.0), 0.01));
            std::vector<double> z(static_cast<std::size_t>(n) + 1);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            for (auto& v : z) v = u(rng);
            const CostRow direct = cost(Method::DirectEval, n);
            const CostRow horner = cost(Method::HalfHorner, n);
            OpCounter sop;
            auto z1 = z;
            detail::update_sum_of_powers<true>(t, z1, 0.4, sop);
            OpCounter hor;
            auto z2 = z;
            detail::update_horner<false>(t, z2, 0.4, hor);
            ok = ok && static_cast<long long>(sop.adds) == *direct.adds_update &&
                 std::llabs(static_cast<long long>(sop.muls) - *direct.muls_update) <= n + 1 &&
                 static_cast<long long>(hor.adds) == *horner.adds_update &&
                 static_cast<long long>(hor.muls) == *horner.muls_update;
        }
        detail = fmt::format("n=2..15: max |adds-N_A| = {}, max |muls-N_M| = {}; update N_A1/N_A3/N_M3 exact", worst_adds,
                             worst_muls);
        return ok;
    });
}

CriterionResult criterion_strategy_equivalence(std::uint64_t seed) {
    return timed(3, "strategy equivalence", 10.0, [seed](std::string& detail) {
        std::mt19937_64 rng(seed);
        int bad_eval = 0;
        int bad_root = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const RandomPoly rp = random_poly(rng, 2, 12);
            const PolySpec spec = rp.poly.spec();
            std::array<PolyValue, 4> vals;
            std::array<double, 4> roots{};
            const double r00 = std::pow(std::abs(spec.const_term) / 2.0, 1.0 / (spec.n + 1));
            for (std::size_t s = 0; s < 4; ++s) {
                NullCounter none;
                vals[s] = eval_with(kStrategies[s], spec, rp.r, none);
                roots[s] = halley_solve(spec, r00, kStrategies[s], none).r;
            }
            for (std::size_t s = 1; s < 4; ++s) {
                const bool eval_ok = close(vals[0].p, vals[s].p, 1e-9, 1e-12) &&
                                     close(vals[0].dp, vals[s].dp, 1e-9, 1e-12) &&
                                     close(vals[0].ddp, vals[s].ddp, 1e-9, 1e-12);
                bad_eval += eval_ok ? 0 : 1;
                bad_root += close(roots[0], roots[s], 1e-9) ? 0 : 1;
            }
        }
        detail = fmt::format("200 polynomials: {} evaluation mismatches, {} root mismatches", bad_eval, bad_root);
        return bad_eval == 0 && bad_root == 0;
    });
}

CriterionResult criterion_root_quality(std::uint64_t seed) {
    return timed(4, "root-solver quality", 10.0, [seed](std::string& detail) {
        std::mt19937_64 rng(seed + 1);
        int non_monotone = 0;
        int high_residual = 0;
        double worst_ratio = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const HiddCase hc = random_hidd_case(rng);
            const PolySpec spec = make_poly_spec(hc.tables, hc.root_case.const_term);
            const double hi = std::pow(std::abs(hc.b_k) - hc.tables.a[0], 1.0 / (spec.n + 1));
            const double r_star = bisect_root(spec, hi);
            NullCounter none;
            const double r00 = initial_guess(hc.b_k, hc.tables.a[0], spec.n, none);
            for (EvalStrategy s : kStrategies) {
                std::vector<double> iterates;
                HalleyOptions opt;
                opt.iterates = &iterates;
                const HalleyResult h = halley_solve(spec, r00, s, none, opt);
                const double slack = 4.0 * std::numeric_limits<double>::epsilon() * r_star;
                for (std::size_t j = 0; j + 1 < iterates.size(); ++j) {
                    if (std::abs(iterates[j + 1] - r_star) > std::abs(iterates[j] - r_star) + slack) {
                        ++non_monotone;
                    }
                }
                const double bound = 1e-9 * (1.0 + std::abs(spec.const_term));
                worst_ratio = std::max(worst_ratio, h.residual / bound);
                if (h.iterations != 3 || !(h.residual <= bound)) {
                    ++high_residual;
                }
            }
        }
        detail = fmt::format("100 cases x 4 strategies: {} non-monotone steps, {} residual failures, worst "
                             "residual/bound = {:.3g}",
                             non_monotone, high_residual, worst_ratio);
        return non_monotone == 0 && high_residual == 0;
    });
}

CriterionResult criterion_form_equivalence(std::uint64_t seed) {
    return timed(5, "form equivalence", 5.0, [seed](std::string& detail) {
        std::mt19937_64 rng(seed + 2);
        int bad = 0;
        std::array<int, 3> seen{};
        for (int trial = 0; trial < 50; ++trial) {
            const Params p = random_params(rng, 1, 8);
            const Tables t = precompute(p);
            const auto want = static_cast<CaseKind>(trial % 3);
            const StepSetup s = random_step(rng, t, want);
            OpCounter ops;
            const State a = step(s.state, s.f_k, p, t, EvalStrategy::HornerSeparate, UpdateForm::SumOfPowers, ops);
            const State b = step(s.state, s.f_k, p, t, EvalStrategy::HornerSeparate, UpdateForm::HornerInR, ops);
            const State c = step(s.state, s.f_k, p, t, EvalStrategy::HornerSeparate, UpdateForm::MatrixOracle, ops);
            ++seen[static_cast<std::size_t>(a.last->kind)];
            if (!close_vec(a.z, c.z, 1e-12) || !close_vec(b.z, c.z, 1e-12) || !close_vec(a.z, b.z, 1e-12)) {
                ++bad;
            }
        }
        detail = fmt::format("50 steps (neg={}, dead={}, pos={}): {} mismatches", seen[0], seen[1], seen[2], bad);
        return bad == 0 && seen[0] > 0 && seen[1] > 0 && seen[2] > 0;
    });
}

double steady_state_error(int n, double tau, double seconds) {
    const Params p = make_params(n, 1.0, nonrecursive_gains(n), tau);
    const Tables t = precompute(p);
    const std::size_t steps = step_count(seconds, tau);
    const std::vector<double> f = gen_signal(SignalSpec::sine(1.0, 1.0), tau, steps);
    State s = State::zeros(n);
    NullCounter none;
    double worst = 0.0;
    const std::size_t from = steps - steps / 5;
    for (std::size_t k = 0; k < steps; ++k) {
        advance<EvalStrategy::HornerSeparate, UpdateForm::HornerInR>(s, f[k], t, none);
        if (k >= from) {
            worst = std::max(worst, std::abs(s.z[0] - f[k]));
        }
    }
    return worst;
}

CriterionResult criterion_accuracy_scaling() {
    return timed(6, "accuracy scaling", 30.0, [](std::string& detail) {
        const double coarse = steady_state_error(3, 2e-3, 60.0);
        const double fine = steady_state_error(3, 1e-3, 60.0);
        const double ratio = coarse / fine;
        detail = fmt::format("max|z0-f|: tau=2e-3 -> {:.3e}, tau=1e-3 -> {:.3e}, ratio {:.2f} (want [4, 64])", coarse,
                             fine, ratio);
        return std::isfinite(ratio) && ratio >= 4.0 && ratio <= 64.0;
    });
}

CriterionResult criterion_bench_orderings(std::uint64_t seed) {
    return timed(7, "benchmark orderings", 120.0, [seed](std::string& detail) {
        BenchConfig cfg;
        cfg.horizons = {2000.0};
        cfg.repetitions = 3;
        cfg.count_ops = false;
        cfg.gains[10] = extended_gains(10);
        const SignalSpec signal = SignalSpec::default_signal().with_noise(1e-3, seed);

        cfg.n_values = {10};
        cfg.methods = {Method::NaiveNoTables, Method::DirectEval, Method::HalfHorner};
        const BenchReport r10 = run_bench(cfg, signal);
        cfg.n_values = {7};
        cfg.methods = {Method::DirectEval, Method::HalfHorner};
        const BenchReport r7 = run_bench(cfg, signal);

        const double naive10 = r10.at(Method::NaiveNoTables, 10, 2000.0).median_wall_s;
        const double half10 = r10.at(Method::HalfHorner, 10, 2000.0).median_wall_s;
        const double direct10 = r10.at(Method::DirectEval, 10, 2000.0).median_wall_s;
        const double half7 = r7.at(Method::HalfHorner, 7, 2000.0).median_wall_s;
        const double direct7 = r7.at(Method::DirectEval, 7, 2000.0).median_wall_s;
        const double speedup = naive10 / half10;
        detail = fmt::format("n=10: naive {:.3f} s, direct {:.3f} s, half-horner {:.3f} s (naive/half {:.1f}x); "
                             "n=7: direct {:.3f} s, half-horner {:.3f} s",
                             naive10, direct10, half10, speedup, direct7, half7);
        return speedup >= 3.0 && half10 <= 1.05 * direct10 && half7 <= 1.05 * direct7;
    });
}

CriterionResult criterion_dead_zone(std::uint64_t seed) {
    return timed(8, "dead-zone exactness", 1.0, [seed](std::string& detail) {
        std::mt19937_64 rng(seed + 3);
        int bad = 0;
        int dead = 0;
        double worst = 0.0;
        for (int attempt = 0; attempt < 5000 && dead < 1000; ++attempt) {
            const Params p = random_params(rng, 1, 8);
            const Tables t = precompute(p);
            StepSetup s = random_step(rng, t, CaseKind::DeadZone);
            NullCounter none;
            advance<EvalStrategy::HornerSeparate, UpdateForm::HornerInR>(s.state, s.f_k, t, none);
            if (s.state.last->kind != CaseKind::DeadZone) {
                continue;
            }
            ++dead;
            const double err = std::abs(s.state.z[0] - s.f_k) / (std::abs(s.f_k) + 1.0);
            worst = std::max(worst, err);
            bad += err <= 1e-12 ? 0 : 1;
        }
        detail = fmt::format("{} dead-zone steps, worst scaled |z0'-f| = {:.3e}", dead, worst);
        return bad == 0 && dead == 1000;
    });
}

std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt) {
    std::vector<CriterionResult> out;
    out.push_back(criterion_closed_forms());
    out.push_back(criterion_counter_formula());
    out.push_back(criterion_strategy_equivalence(opt.seed));
    out.push_back(criterion_root_quality(opt.seed));
    out.push_back(criterion_form_equivalence(opt.seed));
    out.push_back(criterion_accuracy_scaling());
    if (opt.include_bench) {
        out.push_back(criterion_bench_orderings(opt.seed));
    }
    out.push_back(criterion_dead_zone(opt.seed));
    return out;
}

std::string format_result(const CriterionResult& r) {
    return fmt::format("[{}] #{} {} ({:.2f} s) {}", r.passed ? "PASS" : "FAIL", r.id, r.name, r.seconds, r.detail);
}

}  // namespace hidd::validation

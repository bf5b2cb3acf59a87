#include "hidd/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include <fmt/format.h>

#if defined(__linux__)
#include <pthread.h>
#include <sched.h>
#endif

namespace hidd {

namespace {

void pin_to_current_cpu() {
#if defined(__linux__)
    const int cpu = sched_getcpu();
    if (cpu < 0) {
        return;
    }
    cpu_set_t set;
    CPU_ZERO(&set);
    CPU_SET(cpu, &set);
    pthread_setaffinity_np(pthread_self(), sizeof(set), &set);
#endif
}

// Keeps the optimizer from discarding a timed run.
void consume(const State& s) {
    static volatile double sink = 0.0;
    sink = sink + s.z[0];
}

}  // namespace

const BenchRow& BenchReport::at(Method m, int n, double horizon_s) const {
    for (const auto& r : rows) {
        if (r.method == m && r.n == n && r.horizon_s == horizon_s) {
            return r;
        }
    }
    throw Error(ErrorCode::BadConfig, "no bench row for the requested cell");
}

std::size_t step_count(double horizon_s, double tau) {
    if (!(horizon_s > 0.0) || !(tau > 0.0)) {
        throw Error(ErrorCode::BadConfig, "horizon and tau must be > 0");
    }
    const double steps = horizon_s / tau;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, rounded) || rounded < 1.0) {
        throw Error(ErrorCode::BadConfig, "horizon " + format_double(horizon_s) +
                                              " s is not an integer number of samples of " + format_double(tau));
    }
    return static_cast<std::size_t>(rounded);
}

std::vector<double> gains_for(const BenchConfig& cfg, int n) {
    if (const auto it = cfg.gains.find(n); it != cfg.gains.end()) {
        return it->second;
    }
    try {
        return default_gains(n);
    } catch (const Error&) {
        throw Error(ErrorCode::GainUnavailable, "no gains configured for n = " + std::to_string(n));
    }
}

BenchReport run_bench(const BenchConfig& cfg, const SignalSpec& signal) {
    if (cfg.repetitions < 1) {
        throw Error(ErrorCode::BadConfig, "repetitions must be >= 1");
    }
    std::size_t max_steps = 0;
    for (double h : cfg.horizons) {
        max_steps = std::max(max_steps, step_count(h, cfg.tau));
    }
    // Resolve every order's parameters before anything runs.
    std::vector<std::pair<Params, Tables>> setups;
    for (int n : cfg.n_values) {
        Params p = make_params(n, cfg.L, gains_for(cfg, n), cfg.tau);
        Tables t = precompute(p);
        setups.emplace_back(std::move(p), std::move(t));
    }

    const std::vector<double> samples = gen_signal(signal, cfg.tau, max_steps);
    if (cfg.timing) {
        pin_to_current_cpu();
    }

    using clock = std::chrono::steady_clock;
    BenchReport report;
    for (const auto& [params, tables] : setups) {
        for (double h : cfg.horizons) {
            const std::size_t steps = step_count(h, cfg.tau);
            const std::span<const double> cell(samples.data(), steps);
            for (Method m : cfg.methods) {
                BenchRow row;
                row.method = m;
                row.n = params.n;
                row.horizon_s = h;
                row.steps = steps;

                if (cfg.timing) {
                    NullCounter none;
                    consume(simulate(m, params, tables, cell.first(std::min(steps, cfg.warmup_steps)), none));
                    std::vector<double> wall;
                    for (int rep = 0; rep < cfg.repetitions; ++rep) {
                        const auto t0 = clock::now();
                        const State s = simulate(m, params, tables, cell, none);
                        const auto t1 = clock::now();
                        consume(s);
                        wall.push_back(std::chrono::duration<double>(t1 - t0).count());
                    }
                    std::sort(wall.begin(), wall.end());
                    const std::size_t mid = wall.size() / 2;
                    row.median_wall_s = wall.size() % 2 == 1 ? wall[mid] : 0.5 * (wall[mid - 1] + wall[mid]);
                    row.steps_per_s = row.median_wall_s > 0.0 ? static_cast<double>(steps) / row.median_wall_s : 0.0;
                }

                if (cfg.count_ops) {
                    OpCounter ops;
                    const State counted = simulate(m, params, tables, cell, ops);
                    row.ops = ops;
                    row.final_z = counted.z;
                }
                report.rows.push_back(std::move(row));
            }
        }
    }
    return report;
}

void write_bench_csv(std::ostream& os, const BenchReport& report) {
    os << "method,n,horizon_s,median_wall_s,steps_per_s,adds,muls,roots,cmps\n";
    for (const auto& r : report.rows) {
        os << fmt::format("{},{},{},{},{},{},{},{},{}\n", to_string(r.method), r.n, format_double(r.horizon_s),
                          format_double(r.median_wall_s), format_double(r.steps_per_s), r.ops.adds, r.ops.muls,
                          r.ops.roots, r.ops.cmps);
    }
}

std::string format_double(double v) { return fmt::format("{}", v); }

}  // namespace hidd

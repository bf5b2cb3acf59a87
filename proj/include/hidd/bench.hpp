#pragma once

#include <map>
#include <ostream>
#include <span>
#include <vector>

#include "hidd/complexity.hpp"
#include "hidd/core_types.hpp"
#include "hidd/differentiator.hpp"
#include "hidd/op_counter.hpp"
#include "hidd/signal.hpp"

namespace hidd {

struct BenchConfig {
    std::vector<int> n_values{3, 7, 10};
    double tau = 1e-3;
    double L = 10.0;
    std::vector<double> horizons{2000.0, 10000.0, 25000.0, 50000.0};
    std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
    int repetitions = 3;
    // Gains per order; orders without an entry fall back to default_gains.
    std::map<int, std::vector<double>> gains;
    // Length of the discarded warm-up prefix run before each timed cell.
    std::size_t warmup_steps = 20000;
    // false: op-count mode, no wall-clock measurement.
    bool timing = true;
    // false: skip the counted pass (tallies stay zero).
    bool count_ops = true;
};

struct BenchRow {
    Method method = Method::DirectEval;
    int n = 0;
    double horizon_s = 0.0;
    std::size_t steps = 0;
    double median_wall_s = 0.0;
    double steps_per_s = 0.0;
    OpCounter ops;
    std::vector<double> final_z;
};

struct BenchReport {
    std::vector<BenchRow> rows;

    const BenchRow& at(Method m, int n, double horizon_s) const;
};

/// Number of samples in a horizon; throws Error{BadConfig} unless
/// horizon / tau is an integer.
std::size_t step_count(double horizon_s, double tau);

/// Gains for order n from the config, else the defaults.
/// Throws Error{GainUnavailable}.
std::vector<double> gains_for(const BenchConfig& cfg, int n);

/// Runs one method over `samples` from a zero state.
template <Counter C>
State simulate(Method m, const Params& params, const Tables& t, std::span<const double> samples, C& ops) {
    State s = State::zeros(params.n);
    switch (m) {
        case Method::NaiveNoTables:
            for (double f : samples) advance_untabulated(s, f, params, ops);
            break;
        case Method::DirectEval:
            for (double f : samples) advance<EvalStrategy::Direct, UpdateForm::SumOfPowers>(s, f, t, ops);
            break;
        case Method::HalfHorner:
            for (double f : samples) advance<EvalStrategy::HornerSeparate, UpdateForm::HornerInR>(s, f, t, ops);
            break;
        case Method::FullHorner:
            for (double f : samples) advance<EvalStrategy::HornerFused, UpdateForm::HornerInR>(s, f, t, ops);
            break;
        case Method::ShawTraub:
            for (double f : samples) advance<EvalStrategy::ShawTraub, UpdateForm::HornerInR>(s, f, t, ops);
            break;
    }
    return s;
}

/// Times every (method, n, horizon) cell: samples generated up front,
/// warm-up prefix discarded, median wall clock over the repetitions on a
/// monotonic clock, single thread. Op tallies come from a separate counted
/// pass.
BenchReport run_bench(const BenchConfig& cfg, const SignalSpec& signal);

/// CSV: method,n,horizon_s,median_wall_s,steps_per_s,adds,muls,roots,cmps
void write_bench_csv(std::ostream& os, const BenchReport& report);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

}  // namespace hidd

#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hidd/core_types.hpp"
#include "hidd/polyeval.hpp"
#include "hidd/rootfind.hpp"

namespace hidd::validation {

// Reference computations and random corpora shared by the acceptance
// binary, the unit tests and `hidd validate`. Nothing here is on the
// differentiator's production path.

/// Root of the monic polynomial on [0, hi] by 200 bisection steps.
double bisect_root(const PolySpec& poly, double hi);

/// Plain power-sum evaluation of p, p', p'' straight from the coefficients
/// (std::pow per term), independent of every kernel.
PolyValue reference_eval(const PolySpec& poly, double r);

/// |a - b| <= rel * max(|a|, |b|) + abs_floor
bool close(double a, double b, double rel, double abs_floor = 0.0);

/// max_i |a_i - b_i| <= rel * max(max_i |a_i|, max_i |b_i|)
bool close_vec(std::span<const double> a, std::span<const double> b, double rel);

/// Gains used for orders past the default table (n <= 10).
std::vector<double> extended_gains(int n);

struct RandomPoly {
    MonicPolynomial poly;
    double r = 0.0;  // evaluation radius in (guard, Cauchy bound]
};

/// n in [n_lo, n_hi], a_i in (0, 10], const in [-50, -0.01].
RandomPoly random_poly(std::mt19937_64& rng, int n_lo = 2, int n_hi = 12);

struct HiddCase {
    Params params;
    Tables tables;
    double b_k = 0.0;
    RootCase root_case;
};

/// Random Params (n in [n_lo, n_hi], tau log-uniform in [1e-3, 1e-1],
/// L log-uniform in [0.5, 10], gains uniform in [1, 12]) and a b_k outside
/// the dead zone with |b_k| - a_0 log-uniform in [1e-10, 10].
HiddCase random_hidd_case(std::mt19937_64& rng, int n_lo = 2, int n_hi = 8);

/// Random Params with n in [n_lo, n_hi] (no b_k).
Params random_params(std::mt19937_64& rng, int n_lo, int n_hi);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::string detail;
};

struct SuiteOptions {
    bool include_bench = true;
    std::uint64_t seed = 20240611;
};

std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt = {});

/// Individual criteria (exposed so tests can run them one at a time).
CriterionResult criterion_closed_forms();
CriterionResult criterion_counter_formula();
CriterionResult criterion_strategy_equivalence(std::uint64_t seed);
CriterionResult criterion_root_quality(std::uint64_t seed);
CriterionResult criterion_form_equivalence(std::uint64_t seed);
CriterionResult criterion_accuracy_scaling();
CriterionResult criterion_bench_orderings(std::uint64_t seed);
CriterionResult criterion_dead_zone(std::uint64_t seed);

/// Steady-state max |z_0 - f| over the last 20% of a noise-free sin(t) run
/// (L = 1, non-recursive gains).
double steady_state_error(int n, double tau, double seconds);

/// "[PASS] #id name (1.23 s) detail"
std::string format_result(const CriterionResult& r);

}  // namespace hidd::validation

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

namespace hidd {

/// The five ways of running the differentiator that are compared.
///  NaiveNoTables: direct evaluation rebuilding every constant per step;
///  DirectEval:    monomial evaluation + sum-of-powers update;
///  HalfHorner:    separate Horner chains + Horner-in-r0 update;
///  FullHorner:    fused Horner (synthetic division) + Horner-in-r0 update;
///  ShawTraub:     Shaw-Traub evaluation + Horner-in-r0 update.
enum class Method { NaiveNoTables, DirectEval, HalfHorner, FullHorner, ShawTraub };

inline constexpr Method kAllMethods[] = {Method::NaiveNoTables, Method::DirectEval, Method::HalfHorner,
                                         Method::FullHorner, Method::ShawTraub};
inline constexpr Method kModelledMethods[] = {Method::DirectEval, Method::HalfHorner, Method::FullHorner,
                                              Method::ShawTraub};

/// CLI / CSV name: naive, direct, half-horner, full-horner, shaw-traub.
std::string_view to_string(Method m) noexcept;
/// Inverse of to_string; also accepts underscores. Throws Error{BadConfig}.
Method parse_method(std::string_view name);

/// Closed-form operation counts for one method at one order.
///
/// The *_update fields count the state update after r0 is known, the
/// *_eval_per_iter fields one polynomial/derivative evaluation (a single
/// Halley iteration). They are empty where no closed form exists.
/// `eval_total` is the linear time of the evaluation scheme alone and
/// `total` the full per-step time complexity T(n).
struct CostRow {
    int n = 0;
    std::optional<std::int64_t> adds_update;
    std::optional<std::int64_t> muls_update;
    std::optional<std::int64_t> adds_eval_per_iter;
    std::optional<std::int64_t> muls_eval_per_iter;
    std::int64_t eval_total = 0;
    std::int64_t total = 0;
};

/// Halley iterations per step assumed by the closed forms.
inline constexpr int kHalleyIterations = 3;

/// Throws Error{NoClosedForm} for NaiveNoTables, Error{BadRange} for n < 2.
CostRow cost(Method m, int n);

struct ComplexityTable {
    int n_lo = 0;
    int n_hi = 0;
    // rows[method index in kModelledMethods][n - n_lo]
    std::vector<std::vector<CostRow>> rows;

    const CostRow& at(Method m, int n) const;
};

/// Throws Error{BadRange} unless 2 <= n_lo <= n_hi.
ComplexityTable complexity_table(int n_lo, int n_hi);

/// CSV with header `n,direct,half_horner,full_horner,shaw_traub`.
void write_complexity_csv(std::ostream& os, const ComplexityTable& table);

}  // namespace hidd

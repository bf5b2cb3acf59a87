#include "hidd/complexity.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "hidd/error.hpp"

namespace hidd {

namespace {

// Exact division of an integral polynomial numerator.
std::int64_t exact_div(std::int64_t num, std::int64_t den) {
    assert(num % den == 0);
    return num / den;
}

// N_A1 = (n+1)^2, N_M1 = n^3/6 + n^2 - n/6 - 1
std::int64_t adds_update_direct(std::int64_t n) { return (n + 1) * (n + 1); }
std::int64_t muls_update_direct(std::int64_t n) { return exact_div(n * n * n + 6 * n * n - n - 6, 6); }
// N_A3 = (n+1)^2, N_M3 = n(n+1)
std::int64_t adds_update_horner(std::int64_t n) { return (n + 1) * (n + 1); }
std::int64_t muls_update_horner(std::int64_t n) { return n * (n + 1); }

}  // namespace

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::NaiveNoTables: return "naive";
        case Method::DirectEval: return "direct";
        case Method::HalfHorner: return "half-horner";
        case Method::FullHorner: return "full-horner";
        case Method::ShawTraub: return "shaw-traub";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    std::string s(name);
    std::replace(s.begin(), s.end(), '_', '-');
    for (Method m : kAllMethods) {
        if (s == to_string(m)) {
            return m;
        }
    }
    throw Error(ErrorCode::BadConfig, "unknown method '" + std::string(name) + "'");
}

CostRow cost(Method m, int order) {
    if (m == Method::NaiveNoTables) {
        throw Error(ErrorCode::NoClosedForm, "the untabulated method has no closed-form cost");
    }
    if (order < 2) {
        throw Error(ErrorCode::BadRange, "closed forms are defined for n >= 2");
    }
    const std::int64_t n = order;
    CostRow row;
    row.n = order;
    switch (m) {
        case Method::DirectEval:
            row.adds_update = adds_update_direct(n);
            row.muls_update = muls_update_direct(n);
            row.adds_eval_per_iter = 3 * n + 1;
            row.muls_eval_per_iter = exact_div(3 * n * n + 3 * n, 2);
            row.eval_total = exact_div(9 * n * n + 27 * n, 2) + 46;  // T2
            // T = n^3/6 + 13n^2/2 + 110n/6 + 48
            row.total = exact_div(n * n * n + 39 * n * n + 110 * n + 288, 6);
            break;
        case Method::HalfHorner:
            row.adds_update = adds_update_horner(n);
            row.muls_update = muls_update_horner(n);
            row.adds_eval_per_iter = 3 * n + 1;
            row.muls_eval_per_iter = 3 * n - 1;
            row.eval_total = 18 * n + 43;  // T4
            row.total = 2 * n * n + 24 * n + 46;
            break;
        case Method::FullHorner:
            row.adds_update = adds_update_horner(n);
            row.muls_update = muls_update_horner(n);
            row.eval_total = 36 * n + 55;  // T5
            row.total = 2 * n * n + 42 * n + 58;
            break;
        case Method::ShawTraub:
            row.adds_update = adds_update_horner(n);
            row.muls_update = muls_update_horner(n);
            row.eval_total = 30 * n + 70;  // T6
            row.total = 2 * n * n + 36 * n + 74;
            break;
        case Method::NaiveNoTables: break;
    }
    return row;
}

const CostRow& ComplexityTable::at(Method m, int n) const {
    const auto it = std::find(std::begin(kModelledMethods), std::end(kModelledMethods), m);
    if (it == std::end(kModelledMethods) || n < n_lo || n > n_hi) {
        throw Error(ErrorCode::BadRange, "no row for this method/order");
    }
    return rows[static_cast<std::size_t>(it - std::begin(kModelledMethods))][static_cast<std::size_t>(n - n_lo)];
}

ComplexityTable complexity_table(int n_lo, int n_hi) {
    if (n_lo < 2 || n_hi < n_lo) {
        throw Error(ErrorCode::BadRange,
                    "need 2 <= from <= to, got from=" + std::to_string(n_lo) + " to=" + std::to_string(n_hi));
    }
    ComplexityTable table;
    table.n_lo = n_lo;
    table.n_hi = n_hi;
    for (Method m : kModelledMethods) {
        auto& col = table.rows.emplace_back();
        for (int n = n_lo; n <= n_hi; ++n) {
            col.push_back(cost(m, n));
        }
    }
    return table;
}

void write_complexity_csv(std::ostream& os, const ComplexityTable& table) {
    os << "n,direct,half_horner,full_horner,shaw_traub\n";
    for (int n = table.n_lo; n <= table.n_hi; ++n) {
        os << n;
        for (Method m : kModelledMethods) {
            os << ',' << table.at(m, n).total;
        }
        os << '\n';
    }
}

}  // namespace hidd

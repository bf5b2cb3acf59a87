#pragma once

#include <cstdint>

namespace hidd {

/// Additive tallies of scalar operations.
///
/// Counting convention used throughout the library:
///  - additions and subtractions go to `adds`; multiplications and divisions
///    go to `muls`; fractional powers go to `roots`; branch decisions of the
///    algorithm go to `cmps`;
///  - multiplications by the literal 1 (monic leading coefficient, phi_1)
///    and sign flips are free;
///  - the constant term a_0 -+ b_k is combined once per solve, not once per
///    Halley iteration.
struct OpCounter {
    std::uint64_t adds = 0;
    std::uint64_t muls = 0;
    std::uint64_t roots = 0;
    std::uint64_t cmps = 0;

    static constexpr bool enabled = true;

    void add(std::uint64_t k = 1) noexcept { adds += k; }
    void mul(std::uint64_t k = 1) noexcept { muls += k; }
    void root(std::uint64_t k = 1) noexcept { roots += k; }
    void cmp(std::uint64_t k = 1) noexcept { cmps += k; }

    OpCounter& operator+=(const OpCounter& o) noexcept {
        adds += o.adds;
        muls += o.muls;
        roots += o.roots;
        cmps += o.cmps;
        return *this;
    }

    friend OpCounter operator-(const OpCounter& a, const OpCounter& b) noexcept {
        return {a.adds - b.adds, a.muls - b.muls, a.roots - b.roots, a.cmps - b.cmps};
    }

    friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

/// Drop-in replacement for OpCounter that compiles to nothing.
struct NullCounter {
    static constexpr bool enabled = false;

    void add(std::uint64_t = 1) noexcept {}
    void mul(std::uint64_t = 1) noexcept {}
    void root(std::uint64_t = 1) noexcept {}
    void cmp(std::uint64_t = 1) noexcept {}
};

template <class C>
concept Counter = requires(C c) {
    c.add(1);
    c.mul(1);
    c.root(1);
    c.cmp(1);
};

// Snapshot helper: returns the tallies so far, or zeros for NullCounter.
template <Counter C>
OpCounter snapshot(const C& c) noexcept {
    if constexpr (C::enabled) {
        return c;
    } else {
        return {};
    }
}

}  // namespace hidd

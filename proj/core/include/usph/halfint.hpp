#pragma once
// exact half-integer arithmetic (values stored doubled) and the (ell, m)
// index pairs the whole library is parameterized by

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace usph {

struct HalfInt {
    std::int64_t twice = 0;

    constexpr HalfInt() = default;
    constexpr HalfInt(std::int64_t whole) : twice(2 * whole) {} // NOLINT: implicit by design

    static constexpr HalfInt from_twice(std::int64_t t) {
        HalfInt h;
        h.twice = t;
        return h;
    }

    constexpr bool is_whole() const { return twice % 2 == 0; }
    constexpr double value() const { return 0.5 * static_cast<double>(twice); }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice + b.twice); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice - b.twice); }
    friend constexpr HalfInt operator-(HalfInt a) { return from_twice(-a.twice); }
    friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

    std::string str() const; // "3", "7/2"
};

// parse "3", "7/2" or "3.5"; returns nothing on malformed input
std::optional<HalfInt> parse_half(const std::string& s);

struct IndexPair {
    HalfInt ell, m;

    // the admissible set I: m >= 0 and ell - m - 1/2 a nonnegative integer
    constexpr bool in_I() const {
        const auto diff = ell.twice - m.twice;
        return m.twice >= 0 && diff >= 1 && diff % 2 == 1;
    }

    // polynomial degree j = ell - m - 1/2
    constexpr std::int64_t degree() const { return (ell.twice - m.twice - 1) / 2; }

    // the d-specific subset: ell in N + (d-1)/2, m in N + (d-2)/2
    constexpr bool in_I_d(int d) const {
        if (d < 2 || !in_I()) return false;
        const auto le = ell.twice - (d - 1);
        const auto me = m.twice - (d - 2);
        return le >= 0 && le % 2 == 0 && me >= 0 && me % 2 == 0;
    }

    friend constexpr auto operator<=>(IndexPair a, IndexPair b) = default;

    std::string str() const; // "(7/2, 2)"
};

// transition points of the pair: b = m/ell, a = sqrt(1 - b^2); xbar (the zero
// of the potential Q) is only defined when m > 1, where it falls in [a, 1)
struct TransitionData {
    double a = 0.0;
    double b = 0.0;
    std::optional<double> xbar;
};

} // namespace usph

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hms {

/// Arbitrary-precision integer.
using Int = boost::multiprecision::cpp_int;

/// Exact rational, always reduced with positive denominator.
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rat& r) { return r.str(); }
inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// The two-element field.
struct F2 {
    std::uint8_t v = 0;

    constexpr F2() = default;
    constexpr F2(int x) : v(static_cast<std::uint8_t>(x & 1)) {}

    friend constexpr F2 operator+(F2 a, F2 b) { return F2(a.v ^ b.v); }
    friend constexpr F2 operator-(F2 a, F2 b) { return F2(a.v ^ b.v); }
    friend constexpr F2 operator*(F2 a, F2 b) { return F2(a.v & b.v); }
    friend F2 operator/(F2 a, F2 b) {
        if (!b.v) throw std::domain_error("F2: division by zero");
        return a;
    }
    friend constexpr bool operator==(F2 a, F2 b) { return a.v == b.v; }
    friend constexpr bool operator!=(F2 a, F2 b) { return a.v != b.v; }
    F2& operator+=(F2 o) { v ^= o.v; return *this; }
};

inline std::string to_string(F2 a) { return a.v ? "1" : "0"; }

/// Field traits used by the elimination routines.
template <class K> struct FieldOps;

template <> struct FieldOps<Rat> {
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static bool is_zero(const Rat& a) { return a == 0; }
};

template <> struct FieldOps<F2> {
    static F2 zero() { return F2(0); }
    static F2 one() { return F2(1); }
    static bool is_zero(F2 a) { return a.v == 0; }
};

}  // namespace hms
